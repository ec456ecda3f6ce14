"""The surface relator of a cover with two full points and its intersection form.

The relator is the rewriting of (g_0 g_1 ... g_k)^n, which reads every
delta_{i,j} exactly once.  Substituting the eliminated generators leaves a
cyclic word of length 4g in which every kept generator occurs once with each
sign.

Reading off how the two occurrences of a_i and a_j interleave along the word
gives a skew unimodular matrix R (:func:`rule_matrix`).  R pairs the chords
of the 2-cell joining the two sides labelled a_i, which are the curves dual to
the edge loops; it transforms as a form on cohomology (M R M^T = R for the
deck matrix M).  The intersection form on the edge-loop basis is therefore
R^{-1}, which is what :func:`intersection_form` returns.  For a standard
commutator word R^{-1} = -R, so the two only differ beyond genus one.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .abelian import charpoly, det, inverse_unimodular, matmul, matpow, poly_at_matrix, transpose
from .covering import (
    BranchData,
    RSPresentation,
    genus,
    homology_two_full,
    inertia_orders,
    product_word,
    rewrite,
    rs_generators,
)
from .errors import PreconditionTwoFull, WordShapeViolation
from .cyclotomic import x_pow_minus_one
from .intpoly import IntPoly

# Global sign of the intersection form; +1 makes the Fermat cubic give +1 in
# the upper-right entry for the lexicographic basis.
ORIENTATION = 1


@dataclass(frozen=True)
class Letter:
    gen: tuple
    sign: int

    def inverse(self) -> "Letter":
        return Letter(self.gen, -self.sign)

    def __str__(self):
        i, j = self.gen
        return f"d{i},{j}" + ("" if self.sign == 1 else "^-1")


@dataclass(frozen=True)
class RelatorWord:
    letters: tuple

    @classmethod
    def from_raw(cls, raw: Sequence[tuple]) -> "RelatorWord":
        return cls(tuple(Letter((i, j), e) for i, j, e in raw))

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        return " ".join(str(a) for a in self.letters) if self.letters else "1"

    def free_reduce(self) -> "RelatorWord":
        stack: list = []
        for a in self.letters:
            if stack and stack[-1] == a.inverse():
                stack.pop()
            else:
                stack.append(a)
        return RelatorWord(tuple(stack))

    def cyclic_reduce(self) -> "RelatorWord":
        w = list(self.free_reduce().letters)
        while len(w) >= 2 and w[0] == w[-1].inverse():
            w = w[1:-1]
        return RelatorWord(tuple(w))

    def generators(self) -> list:
        return sorted({a.gen for a in self.letters})

    def positions(self) -> dict:
        """gen -> (position of the positive letter, position of the inverse)."""
        pos: dict = {}
        for t, a in enumerate(self.letters):
            pos.setdefault(a.gen, [None, None])[0 if a.sign == 1 else 1] = t
        return pos

    def shape_problems(self) -> list:
        problems = []
        counts: dict = {}
        for a in self.letters:
            counts[(a.gen, a.sign)] = counts.get((a.gen, a.sign), 0) + 1
        for gen in self.generators():
            for s in (1, -1):
                c = counts.get((gen, s), 0)
                if c != 1:
                    problems.append(f"{gen} occurs {c} times with sign {s:+d}")
        return problems

    def has_surface_shape(self, g: int | None = None) -> bool:
        if self.shape_problems():
            return False
        return g is None or len(self.letters) == 4 * g

    def to_json(self) -> list:
        return [[a.gen[0], a.gen[1], a.sign] for a in self.letters]

    def vertex_count(self) -> int:
        """Vertices of the complex obtained by gluing the sides of one 2-cell along the word."""
        L = len(self.letters)
        parent = list(range(L))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        ends: dict = {}
        for t, a in enumerate(self.letters):
            tail, head = (t, (t + 1) % L) if a.sign == 1 else ((t + 1) % L, t)
            ends.setdefault(a.gen, []).append((tail, head))
        for pair in ends.values():
            for (t0, h0), (t1, h1) in zip(pair, pair[1:]):
                parent[find(t0)] = find(t1)
                parent[find(h0)] = find(h1)
        return len({find(a) for a in range(L)}) if L else 1


def _require_two_full(b: BranchData) -> None:
    r = inertia_orders(b)
    if r[0] != b.n or r[-1] != b.n:
        raise PreconditionTwoFull(f"need full ramification at 0 and infinity, inertia {r}")


def build_relator(b: BranchData) -> RelatorWord:
    """Rewriting of (g_0 ... g_k)^n from the trivial coset, in all n*k generators."""
    _require_two_full(b)
    nb = rs_generators(b).data
    return RelatorWord.from_raw(rewrite(nb, product_word(nb, nb.n)))


def _replacement(pres: RSPresentation, gen: tuple) -> list:
    """Expression of an eliminated generator in kept ones."""
    i, j = gen
    n = pres.n
    m = pres.data.m[j]
    r = inertia_orders(pres.data)[j]
    return [Letter(((i + h * m) % n, j), -1) for h in range(r - 1, 0, -1)]


def eliminate(word: RelatorWord, pres: RSPresentation, check: bool = True) -> RelatorWord:
    dropped = set(pres.eliminated)
    out = []
    for a in word.letters:
        if a.gen not in dropped:
            out.append(a)
            continue
        rep = _replacement(pres, a.gen)
        if a.sign == -1:
            rep = [x.inverse() for x in reversed(rep)]
        out.extend(rep)
    reduced = RelatorWord(tuple(out)).cyclic_reduce()
    if check:
        problems = reduced.shape_problems()
        kept = set(pres.kept)
        if set(reduced.generators()) != kept:
            problems.append("reduced word does not use every kept generator")
        if problems:
            raise WordShapeViolation("; ".join(problems))
    return reduced


@dataclass
class IntersectionForm:
    basis: list
    matrix: list
    rule: list | None = None

    @property
    def size(self) -> int:
        return len(self.basis)

    def det(self) -> int:
        return det(self.matrix) if self.matrix else 1

    def is_skew(self) -> bool:
        n = self.size
        return all(self.matrix[a][c] == -self.matrix[c][a] for a in range(n) for c in range(n))

    def entry(self, x: tuple, y: tuple) -> int:
        return self.matrix[self.basis.index(x)][self.basis.index(y)]

    def to_json(self) -> dict:
        return {"basis": [list(g) for g in self.basis], "matrix": self.matrix, "det": self.det(),
                "rule_matrix": self.rule}


def _pairing(pos: dict, a: tuple, c: tuple, length: int) -> int:
    if a == c:
        return 0
    plus, minus = pos[a]

    def inside(t):
        return 0 < (t - plus) % length < (minus - plus) % length

    c_plus, c_minus = (inside(t) for t in pos[c])
    if c_plus == c_minus:
        return 0
    return 1 if c_plus else -1


def rule_matrix(word: RelatorWord, basis: Sequence[tuple] | None = None) -> list:
    """Interleaving pairing: +1 if a_j sits between a_i and a_i^-1 and a_j^-1 does not,
    -1 in the mirrored case, 0 if both or neither do."""
    problems = word.shape_problems()
    if problems:
        raise WordShapeViolation("; ".join(problems))
    basis = list(basis) if basis is not None else word.generators()
    if set(basis) != set(word.generators()):
        raise WordShapeViolation("basis does not match the generators of the word")
    pos = word.positions()
    L = len(word)
    return [[_pairing(pos, a, c, L) for c in basis] for a in basis]


def intersection_form(word: RelatorWord, basis: Sequence[tuple] | None = None) -> IntersectionForm:
    basis = list(basis) if basis is not None else word.generators()
    R = rule_matrix(word, basis)
    try:
        S = inverse_unimodular(R)
    except ValueError as exc:
        raise WordShapeViolation(
            f"interleaving matrix is singular; the word glues to {word.vertex_count()} vertices") from exc
    return IntersectionForm(basis, [[ORIENTATION * a for a in row] for row in S], R)


def deck_action(b: BranchData) -> list:
    """Matrix of x on H_1 in the kept basis; column t is the image of basis vector t."""
    _require_two_full(b)
    pres = rs_generators(b)
    kept = pres.kept
    where = {g: t for t, g in enumerate(kept)}
    dropped = set(pres.eliminated)
    N = len(kept)
    M = [[0] * N for _ in range(N)]
    for col, (i, j) in enumerate(kept):
        target = ((i + 1) % pres.n, j)
        if target in dropped:
            for a in _replacement(pres, target):
                M[where[a.gen]][col] += a.sign
        else:
            M[where[target]][col] += 1
    return M


@dataclass
class IntersectionReport:
    data: BranchData
    genus: int
    relator: RelatorWord
    reduced: RelatorWord
    form: IntersectionForm
    deck: list

    def symplectic(self) -> bool:
        M, S = self.deck, self.form.matrix
        if not M:
            return True
        return matmul(matmul(transpose(M), S), M) == S

    def rule_invariant(self) -> bool:
        """M R M^T = R for the interleaving matrix R."""
        M, R = self.deck, self.form.rule
        if not M:
            return True
        return matmul(matmul(M, R), transpose(M)) == R

    def deck_order_divides_n(self) -> bool:
        if not self.deck:
            return True
        N = len(self.deck)
        return matpow(self.deck, self.data.n) == [[int(a == c) for c in range(N)] for a in range(N)]

    def annihilated_by_qn(self) -> bool:
        if not self.deck:
            return True
        Z = poly_at_matrix(x_pow_minus_one(self.data.n), self.deck)
        return not any(any(row) for row in Z)

    def charpoly_matches(self) -> bool:
        expected = homology_two_full(self.data).charpoly()
        got = charpoly(self.deck) if self.deck else IntPoly((1,))
        return got == expected

    def to_json(self) -> dict:
        return {
            "genus": self.genus,
            "relator": self.relator.to_json(),
            "reduced_relator": self.reduced.to_json(),
            "basis": [list(g) for g in self.form.basis],
            "matrix": self.form.matrix,
            "rule_matrix": self.form.rule,
            "det": self.form.det(),
            "skew": self.form.is_skew(),
            "deck_matrix": self.deck,
            "symplectic_check": self.symplectic(),
            "deck_order_divides_n": self.deck_order_divides_n(),
            "rule_invariant": self.rule_invariant(),
        }


def intersection_report(b: BranchData) -> IntersectionReport:
    pres = rs_generators(b)
    word = build_relator(b)
    reduced = eliminate(word, pres)
    form = intersection_form(reduced, pres.kept)
    return IntersectionReport(b, genus(b), word, reduced, form, deck_action(b))


# ---------------------------------------------------------------------------
# comparison with the published genus-4 table (n = 3, six points)


def published_genus4_word() -> RelatorWord:
    """The displayed relator with a_j = delta_{1,j} and b_j = delta_{2,j}."""
    a = [Letter((1, j), 1) for j in range(1, 5)]
    bb = [Letter((2, j), 1) for j in range(1, 5)]
    tail = []
    for j in range(4):
        tail += [bb[j].inverse(), a[j].inverse()]
    return RelatorWord(tuple(a + bb + tail))


def published_genus4_entries() -> dict:
    """Entries asserted by the published table, keyed by generator pairs."""
    a = {j: (1, j) for j in range(1, 5)}
    b = {j: (2, j) for j in range(1, 5)}
    out = {}
    for i in range(1, 5):
        for j in range(i + 1, 5):
            out[(a[i], a[j])] = 1
            out[(a[i], b[j])] = 1
            out[(b[i], b[j])] = 1
    for i, start in ((1, 1), (2, 2), (3, 3)):
        for j in range(start, 5):
            out[(b[i], a[j])] = 0
    out[(a[4], b[4])] = 0
    return out


def compare_table(basis: Sequence[tuple], matrix: Sequence[Sequence[int]]) -> list:
    """Mismatches between a matrix and the published entries, up to a global sign."""
    table = published_genus4_entries()
    where = {g: t for t, g in enumerate(basis)}
    best = None
    for sign in (1, -1):
        bad = [{"pair": [list(x), list(y)], "published": v, "computed": sign * matrix[where[x]][where[y]]}
               for (x, y), v in table.items() if sign * matrix[where[x]][where[y]] != v]
        if best is None or len(bad) < len(best):
            best = bad
    return best


def genus4_comparison() -> dict:
    """Computed data for y^3 = x(x^4 - 1) next to the published word and table."""
    rep = intersection_report(BranchData(3, (1, 1, 1, 1, 1, 1)))
    basis = rep.form.basis
    published = published_genus4_word()
    pub_rule = rule_matrix(published, basis)
    return {
        "basis": [list(g) for g in basis],
        "computed_word": str(rep.reduced),
        "published_word": str(published),
        "computed_word_vertices": rep.reduced.vertex_count(),
        "published_word_vertices": published.vertex_count(),
        "published_word_rule_det": det(pub_rule),
        "form_vs_table": compare_table(basis, rep.form.matrix),
        "rule_vs_table": compare_table(basis, rep.form.rule),
        "published_rule_vs_table": compare_table(basis, pub_rule),
    }
