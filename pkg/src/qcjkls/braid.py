"""Braid words, their closures, and quandle colorings of those closures.

A braid word on s strands is a sequence of signed generator indices:
letter +i crosses strand i over strand i+1, letter -i crosses strand i
under strand i+1 (1-based indices, lanes i-1 and i).  Coloring a
closure means assigning quandle elements to the top of every lane so
that pushing the colors through all crossings reproduces the top tuple
at the bottom.

Crossing rule for a local pair (x, y) = (left lane, right lane):

    positive letter:  (x, y) -> (y, x*y)    weight phi(x, y)
    negative letter:  (x, y) -> (y ~* x, x) weight phi(y ~* x, x)^-1

The weight arguments are always (under-arc color that gets starred,
over-arc color).
"""

from __future__ import annotations

import re
from bisect import bisect_right
from dataclasses import dataclass
from itertools import groupby, product
from math import gcd

from .cocycle import Cocycle, CocycleError
from .quandle import AlexanderQuandleSpec, MAX_QUANDLE_SIZE, QuandleTable

# Cap on the number of candidate top tuples (quandle_size ** strands) a
# brute-force enumeration will walk, and on the number of colorings the
# linear fast path will materialize.
DEFAULT_BUDGET = 4**12


class BraidSyntaxError(ValueError):
    """Unparseable braid text; carries the 0-based offset of the problem."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class BudgetExceededError(RuntimeError):
    """An enumeration would exceed the configured budget."""


@dataclass(frozen=True)
class BraidWord:
    """Braid group element as a word in signed generator letters."""

    strands: int
    letters: tuple[int, ...]

    def __post_init__(self):
        if self.strands < 2:
            raise ValueError(f"a braid needs at least 2 strands, got {self.strands}")
        object.__setattr__(self, "letters", tuple(int(l) for l in self.letters))
        for l in self.letters:
            if l == 0 or abs(l) >= self.strands:
                raise ValueError(f"letter {l} is not a generator of the {self.strands}-strand braid group")

    def canonical(self) -> str:
        """Serialize as "B<s>: s<i>^<e> ...", merging maximal equal-letter runs."""
        parts = []
        for letter, run in groupby(self.letters):
            count = sum(1 for _ in run)
            exponent = count if letter > 0 else -count
            index = abs(letter)
            parts.append(f"s{index}" if exponent == 1 else f"s{index}^{exponent}")
        body = " ".join(parts)
        return f"B{self.strands}: {body}" if body else f"B{self.strands}:"

    def __str__(self) -> str:
        return self.canonical()


_PREFIX = re.compile(r"\s*B(\d+):")
_ITEM = re.compile(r"s(\d+)(?:\^([+-]?\d+))?\Z")


def parse_braid(text: str) -> BraidWord:
    """Parse "s1^3", "s2^-3 s1^3 s2^-3", or "B4: s1 s3^-2" into a BraidWord.

    Without a "B<s>:" prefix the strand count is one more than the
    largest generator index.  Exponent 0 is rejected; syntax errors
    report a character position.
    """
    prefix = _PREFIX.match(text)
    declared = None
    start = 0
    if prefix:
        declared = int(prefix.group(1))
        if declared < 2:
            raise BraidSyntaxError(f"strand count must be >= 2, got {declared}", 0)
        start = prefix.end()

    letters: list[int] = []
    max_index = 0
    saw_item = False
    for token in re.finditer(r"\S+", text[start:]):
        at = start + token.start()
        item = _ITEM.match(token.group(0))
        if not item:
            raise BraidSyntaxError(f"expected s<i> or s<i>^<e>, got {token.group(0)!r}", at)
        index = int(item.group(1))
        if index < 1:
            raise BraidSyntaxError("generator indices start at 1", at)
        if declared is not None and index >= declared:
            raise BraidSyntaxError(f"generator s{index} does not exist on {declared} strands", at)
        exponent = int(item.group(2)) if item.group(2) is not None else 1
        if exponent == 0:
            raise BraidSyntaxError("exponent 0 is not allowed", at)
        letters.extend([index if exponent > 0 else -index] * abs(exponent))
        max_index = max(max_index, index)
        saw_item = True

    if declared is None:
        if not saw_item:
            raise BraidSyntaxError("empty braid word needs a strand prefix like 'B2:'", 0)
        declared = max_index + 1
    return BraidWord(declared, tuple(letters))


def mirror(word: BraidWord) -> BraidWord:
    """Flip every crossing; the closure becomes the mirror image."""
    return BraidWord(word.strands, tuple(-l for l in word.letters))


def markov_conjugate(word: BraidWord, letter: int) -> BraidWord:
    """Markov conjugation w -> g^-1 w g by a single generator letter."""
    if letter == 0 or abs(letter) >= word.strands:
        raise ValueError(f"letter {letter} is not a generator on {word.strands} strands")
    return BraidWord(word.strands, (-letter,) + word.letters + (letter,))


def markov_stabilize(word: BraidWord, sign: int = 1) -> BraidWord:
    """Markov stabilization w -> w * s_n^(+-1) on one extra strand."""
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")
    return BraidWord(word.strands + 1, word.letters + (sign * word.strands,))


def _run_word(letters, op, inv_op, v, phi=None, gmul=None, ginv=None, identity=0, trace=None):
    """Push colors in v (mutated in place) through the word; returns the weight index."""
    weight = identity
    for letter in letters:
        if letter > 0:
            a = letter - 1
            b = letter
            x, y = v[a], v[b]
            v[a] = y
            v[b] = op[x][y]
            if phi is not None:
                weight = gmul[weight][phi[x][y]]
            if trace is not None:
                trace.append((x, y, 1))
        else:
            b = -letter
            a = b - 1
            x, y = v[a], v[b]
            z = inv_op[y][x]
            v[a] = z
            v[b] = x
            if phi is not None:
                weight = gmul[weight][ginv[phi[z][x]]]
            if trace is not None:
                trace.append((z, x, -1))
    return weight


@dataclass(frozen=True)
class ColoringTrace:
    """Propagation transcript: colors in, colors out, total crossing weight.

    per_crossing lists (under color a, over color b, sign) per letter,
    where a is the under-arc color satisfying a*b == other under color;
    the letter contributes phi(a, b)^sign to the weight.
    """

    top: tuple[int, ...]
    bottom: tuple[int, ...]
    weight: int
    per_crossing: tuple[tuple[int, int, int], ...]


def propagate(word: BraidWord, quandle: QuandleTable, cocycle: Cocycle, top) -> ColoringTrace:
    """Push a top coloring through the word, collecting cocycle weights."""
    if cocycle.quandle.op != quandle.op:
        raise CocycleError("cocycle is defined over a different quandle")
    top = tuple(int(x) for x in top)
    if len(top) != word.strands:
        raise ValueError(f"top coloring has {len(top)} entries for {word.strands} strands")
    if any(not 0 <= x < quandle.size for x in top):
        raise ValueError("top coloring contains indices outside the quandle")

    v = list(top)
    trace: list[tuple[int, int, int]] = []
    weight = _run_word(
        word.letters,
        quandle.op,
        quandle.inv_op,
        v,
        phi=cocycle.table,
        gmul=cocycle.group.mul,
        ginv=cocycle.group.inverse_table,
        identity=cocycle.group.identity,
        trace=trace,
    )
    return ColoringTrace(top=top, bottom=tuple(v), weight=weight, per_crossing=tuple(trace))


def enumerate_colorings(word: BraidWord, quandle: QuandleTable, budget: int = DEFAULT_BUDGET):
    """All closure colorings as top tuples, in lexicographic index order.

    Walks every quandle_size ** strands candidate; raises
    BudgetExceededError with a pointer at enumerate_colorings_affine
    when that count exceeds the budget.
    """
    total = quandle.size**word.strands
    if total > budget:
        raise BudgetExceededError(
            f"{total} candidate tuples exceed the budget {budget}; for Alexander "
            f"quandles use enumerate_colorings_affine instead"
        )
    op, inv_op = quandle.op, quandle.inv_op
    letters = word.letters
    found = []
    for top in product(range(quandle.size), repeat=word.strands):
        v = list(top)
        _run_word(letters, op, inv_op, v)
        if tuple(v) == top:
            found.append(top)
    return found


def _diagonalize(a: list[list[int]]):
    """Integer diagonalization A -> U A V = D; returns (diag, V).

    Row operations are not tracked (only the kernel is wanted); column
    operations are mirrored into V, which stays unimodular.  Diagonal
    entries need not form a divisibility chain.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    v = [[int(i == j) for j in range(n)] for i in range(n)]
    t = 0
    while t < m and t < n:
        pivot = None
        best = None
        for i in range(t, m):
            row = a[i]
            for j in range(t, n):
                e = row[j]
                if e and (best is None or abs(e) < best):
                    pivot, best = (i, j), abs(e)
        if pivot is None:
            break
        pi, pj = pivot
        a[t], a[pi] = a[pi], a[t]
        if pj != t:
            for row in a:
                row[t], row[pj] = row[pj], row[t]
            for row in v:
                row[t], row[pj] = row[pj], row[t]

        dirty = False
        pivot_row = a[t]
        for i in range(m):
            if i != t and a[i][t]:
                q = a[i][t] // pivot_row[t]
                if q:
                    row = a[i]
                    for j in range(t, n):
                        row[j] -= q * pivot_row[j]
                if a[i][t]:
                    dirty = True
        for j in range(n):
            if j != t and pivot_row[j]:
                q = pivot_row[j] // pivot_row[t]
                if q:
                    for row in a:
                        row[j] -= q * row[t]
                    for row in v:
                        row[j] -= q * row[t]
                if pivot_row[j]:
                    dirty = True
        if dirty:
            continue
        t += 1
    diag = [a[i][i] for i in range(min(m, n))]
    return diag, v


def _kernel_mod(a: list[list[int]], mod: int):
    """Solutions of A x == 0 over Z_mod: returns (solution count, V, step table)."""
    diag, v = _diagonalize([row[:] for row in a])
    n = len(a[0]) if a else 0
    steps = []
    count = 1
    for j in range(n):
        d = diag[j] if j < len(diag) else 0
        g = gcd(d, mod)
        steps.append((g, mod // g))
        count *= g
    return count, v, steps


def enumerate_colorings_affine(
    word: BraidWord,
    spec: AlexanderQuandleSpec,
    budget: int = DEFAULT_BUDGET,
    max_ring: int = MAX_QUANDLE_SIZE,
):
    """Closure colorings over an Alexander quandle via exact linear algebra.

    Color propagation is linear over the coefficient ring, so the fixed
    tuples form the kernel of (M - I) where M is the word's transfer
    matrix.  The kernel is found over Z_m after expanding each ring
    entry to a degree x degree integer block, so no enumeration of
    candidate tuples happens; output matches enumerate_colorings
    exactly, including order.  The budget bounds the number of
    colorings materialized, checked before any are produced.
    """
    ring = spec.ring(max_size=max_ring)
    t = ring.t
    t_inv = ring.t_inverse()
    one_minus_t = ring.sub(ring.one, t)
    one_minus_t_inv = ring.sub(ring.one, t_inv)
    s = word.strands

    rows = [[ring.one if i == k else ring.zero for i in range(s)] for k in range(s)]
    for letter in word.letters:
        i = abs(letter)
        a, b = i - 1, i
        ra, rb = rows[a], rows[b]
        if letter > 0:
            new_b = [ring.add(ring.mul(t, ra[j]), ring.mul(one_minus_t, rb[j])) for j in range(s)]
            rows[a], rows[b] = rb, new_b
        else:
            new_a = [
                ring.add(ring.mul(t_inv, rb[j]), ring.mul(one_minus_t_inv, ra[j]))
                for j in range(s)
            ]
            rows[a], rows[b] = new_a, ra

    mod, deg = ring.modulus, ring.degree
    basis = [ring.index_of(tuple(int(j == e) for j in range(deg))) for e in range(deg)]
    n_vars = s * deg
    system = [[0] * n_vars for _ in range(n_vars)]
    for k in range(s):
        for i in range(s):
            entry = rows[k][i]
            if i == k:
                entry = ring.sub(entry, ring.one)
            if entry == ring.zero:
                continue
            for e in range(deg):
                coeffs = ring.elements[ring.mul(entry, basis[e])]
                for r in range(deg):
                    system[k * deg + r][i * deg + e] = coeffs[r]

    count, v, steps = _kernel_mod(system, mod)
    if count > budget:
        raise BudgetExceededError(f"{count} colorings exceed the budget {budget}")

    free = [(j, g, step) for j, (g, step) in enumerate(steps) if g > 1]
    columns = {j: [v[i][j] % mod for i in range(n_vars)] for j, _, _ in free}

    colorings = []
    for choice in product(*[range(g) for _, g, _ in free]):
        x = [0] * n_vars
        for (j, _, step), k in zip(free, choice):
            y = (k * step) % mod
            if y:
                col = columns[j]
                for i in range(n_vars):
                    x[i] += col[i] * y
        coloring = tuple(
            ring.index_of(tuple(x[i * deg + e] % mod for e in range(deg))) for i in range(s)
        )
        colorings.append(coloring)
    colorings.sort()
    return colorings


def _closure_components(word: BraidWord):
    """Cyclic over/under sequences (True = over) per closure component."""
    letters = word.letters
    lanes: list[list[int]] = [[] for _ in range(word.strands)]
    for k, letter in enumerate(letters):
        i = abs(letter)
        lanes[i - 1].append(k)
        lanes[i].append(k)

    visited: set[tuple[int, str]] = set()
    components = []
    for k0 in range(len(letters)):
        for side0 in ("L", "R"):
            if (k0, side0) in visited:
                continue
            seq = []
            k, side = k0, side0
            while True:
                visited.add((k, side))
                letter = letters[k]
                i = abs(letter)
                seq.append((side == "L") == (letter < 0))
                lane = i if side == "L" else i - 1  # strands swap at the crossing
                steps = lanes[lane]
                nxt = bisect_right(steps, k)
                k2 = steps[nxt] if nxt < len(steps) else steps[0]  # wrap through closure
                side2 = "L" if lane == abs(letters[k2]) - 1 else "R"
                if (k2, side2) == (k0, side0):
                    break
                k, side = k2, side2
            components.append(seq)
    return components


def is_alternating_closure(word: BraidWord) -> bool:
    """Does the closure diagram alternate over/under along every component?

    Fast accept: if each generator index appears with a single sign and
    adjacent indices carry opposite signs, the closure always
    alternates.  Otherwise the diagram is traversed component by
    component and each cyclic over/under sequence is checked directly.
    """
    signs: dict[int, int] = {}
    uniform = True
    for letter in word.letters:
        i = abs(letter)
        s = 1 if letter > 0 else -1
        if signs.setdefault(i, s) != s:
            uniform = False
            break
    if uniform and all(signs.get(i + 1, -s) != s for i, s in signs.items()):
        return True

    for seq in _closure_components(word):
        n = len(seq)
        if any(seq[i] == seq[(i + 1) % n] for i in range(n)):
            return False
    return True


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, x: int, y: int) -> None:
        self.parent[self.find(x)] = self.find(y)


def _closure_arc_edges(word: BraidWord):
    """Edges joining crossing ports along arcs of the closure shadow.

    Ports are numbered 4k + {0: top-left, 1: top-right, 2: bottom-left,
    3: bottom-right} for crossing k.
    """
    edges = []
    pending = [None] * word.strands
    first = [None] * word.strands
    for k, letter in enumerate(word.letters):
        i = abs(letter)
        for lane, top_port, bottom_port in ((i - 1, 4 * k, 4 * k + 2), (i, 4 * k + 1, 4 * k + 3)):
            if pending[lane] is None:
                first[lane] = top_port
            else:
                edges.append((pending[lane], top_port))
            pending[lane] = bottom_port
    for lane in range(word.strands):
        if pending[lane] is not None:
            edges.append((pending[lane], first[lane]))  # braid closure wraps each lane
    return edges


def is_reduced_closure(word: BraidWord) -> bool:
    """No crossing of the closure diagram is nugatory.

    A crossing is nugatory exactly when one of its two smoothings
    disconnects the shadow, so each crossing is smoothed both ways in a
    union-find over crossing ports; only the connected component the
    crossing lives in is compared.  Crossing-free circles (trivial
    lanes, split unknots) never make a crossing nugatory and are
    ignored.  The empty word is reduced.
    """
    c = len(word.letters)
    if c == 0:
        return True
    edges = _closure_arc_edges(word)
    nodes = 4 * c

    def build(smooth_at: int | None, horizontal: bool) -> _UnionFind:
        uf = _UnionFind(nodes)
        for x, y in edges:
            uf.union(x, y)
        for k in range(c):
            base = 4 * k
            if k == smooth_at:
                if horizontal:
                    uf.union(base, base + 1)
                    uf.union(base + 2, base + 3)
                else:
                    uf.union(base, base + 2)
                    uf.union(base + 1, base + 3)
            else:
                uf.union(base, base + 1)
                uf.union(base, base + 2)
                uf.union(base, base + 3)
        return uf

    baseline = build(None, False)
    for tau in range(c):
        home = baseline.find(4 * tau)
        local = [p for p in range(nodes) if baseline.find(p) == home]
        for horizontal in (False, True):
            uf = build(tau, horizontal)
            roots = {uf.find(p) for p in local}
            if len(roots) > 1:
                return False
    return True


@dataclass(frozen=True)
class ClosureDiagram:
    """Summary of the closure diagram of a braid word."""

    braid: BraidWord
    crossing_count: int
    alternating: bool
    reduced: bool


def analyze_closure(word: BraidWord) -> ClosureDiagram:
    return ClosureDiagram(
        braid=word,
        crossing_count=len(word.letters),
        alternating=is_alternating_closure(word),
        reduced=is_reduced_closure(word),
    )
