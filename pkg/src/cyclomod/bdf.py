"""Bagnera-De Franchis data for the group Z/n.

A datum consists of free R_d-modules Lambda_d = R_d^{rho_d}, a finite subgroup
Lambda^0 of the ambient module (see :class:`cyclomod.crt.FiniteZxModule`), a
translation beta_1 in (1/n) Lambda_1 / Lambda_1 = (Z/n)^{rho_1}, and the
dimensions of the eigenspaces V_j of a Hodge decomposition on each block.

Block 1 of the ambient module is (Z[x]/(x - 1, n))^{rho_1} = (Z/n)^{rho_1},
the same group beta_1 lives in, so the projection of Lambda^0 to A_1 and
<beta_1> are compared inside (Z/n)^{rho_1}.
"""

from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass, field

from .abelian import Subgroup
from .crt import FiniteZxModule, Lattice, lattice_from_data, subgroup_is_valid, validate_subgroup
from .cyclotomic import divisors
from .errors import BudgetExceeded, MalformedDatum, OddRank

DEFAULT_BUDGET = 10_000


def coprime_residues(d: int) -> list:
    return [j for j in range(1, d + 1) if math.gcd(j, d) == 1 and (j < d or d == 1)]


@dataclass
class BdFDatum:
    n: int
    ranks: dict
    subgroup_gens: list
    beta1: tuple
    hodge_dims: dict
    module: FiniteZxModule = field(repr=False)
    contained: bool = True

    @classmethod
    def build(cls, n: int, ranks: dict, gens_json=(), beta1=(), hodge_dims=None) -> "BdFDatum":
        module = FiniteZxModule(n, {int(d): int(r) for d, r in ranks.items()})
        gens = []
        contained = True
        for g in gens_json:
            if isinstance(g, dict) and "torus" in g:
                v, ok = module.from_torus(g["torus"])
                contained = contained and ok
            else:
                v = module.element_from_json(g)
            gens.append(v)
        rho1 = module.ranks.get(1, 0)
        beta = tuple(int(a) % n for a in beta1)
        if len(beta) != rho1:
            raise MalformedDatum(f"beta1 needs {rho1} entries, got {len(beta)}")
        hodge = _parse_hodge(n, hodge_dims or {})
        return cls(n, dict(module.ranks), gens, beta, hodge, module, contained)

    @classmethod
    def from_json(cls, data: dict) -> "BdFDatum":
        if not isinstance(data, dict):
            raise MalformedDatum("datum must be a JSON object")
        try:
            n = int(data["n"])
            ranks = data["ranks"]
            if isinstance(ranks, list):
                ranks = dict(zip(divisors(n), ranks))
            return cls.build(n, ranks, data.get("subgroup_gens", []), data.get("beta1", []),
                             data.get("hodge_dims"))
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, MalformedDatum):
                raise
            raise MalformedDatum(f"malformed datum: {exc}") from exc

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "n": self.n,
            "ranks": {str(d): r for d, r in self.ranks.items()},
            "subgroup_gens": [{"blocks": self.module.to_blocks(v)} for v in self.subgroup_gens],
            "beta1": list(self.beta1),
            "hodge_dims": {str(d): {str(j): v for j, v in m.items()} for d, m in self.hodge_dims.items()},
        }

    def subgroup(self) -> Subgroup:
        return self.module.subgroup(self.subgroup_gens)

    def projection_to_block1(self) -> Subgroup:
        """Image of Lambda^0 in A_1[n] = (Z/n)^{rho_1}."""
        moduli = (self.n,) * self.ranks.get(1, 0)
        H = self.subgroup()
        images = [block1_component(self.module, self.module.lift(g)) for g in H.generators()]
        return Subgroup.generated_by(images, moduli)


def block1_component(module: FiniteZxModule, v) -> tuple:
    out = []
    for b in module.blocks:
        if b.d == 1:
            out.append(v[b.flat][0] % module.n)
    return tuple(out)


def _parse_hodge(n: int, raw: dict) -> dict:
    out: dict = {}
    for key, dims in raw.items():
        d = int(key)
        if n % d:
            raise MalformedDatum(f"Hodge dimensions given for non-divisor {d}")
        if not isinstance(dims, dict):
            raise MalformedDatum(f"Hodge dimensions for d={d} must map residues to dimensions")
        allowed = coprime_residues(d)
        parsed = {}
        for j, v in dims.items():
            if int(j) not in allowed:
                raise MalformedDatum(f"residue {j} is not a unit mod {d}")
            parsed[int(j)] = int(v)
        out[d] = dict(sorted(parsed.items()))
    return out


def additive_order(v, n: int) -> int:
    order = 1
    for a in v:
        order = math.lcm(order, n // math.gcd(n, a))
    return order


def hodge_admissible(n: int, ranks: dict, hodge: dict) -> tuple:
    """Check dim V_j + dim V_{d-j} = rho_d for each d >= 3, 2 dim V = rho_d for d <= 2."""
    problems = []
    for d in divisors(n):
        rho = ranks.get(d, 0)
        dims = hodge.get(d, {})
        if any(v < 0 or v > rho for v in dims.values()):
            problems.append(f"d={d}: dimension outside [0, {rho}]")
        if d <= 2:
            if 2 * dims.get(1, 0) != rho:
                problems.append(f"d={d}: 2 dim V = {2 * dims.get(1, 0)} but rank is {rho}")
            continue
        for j in coprime_residues(d):
            if 2 * j < d and dims.get(j, 0) + dims.get(d - j, 0) != rho:
                problems.append(f"d={d}: dim V_{j} + dim V_{d - j} != {rho}")
    return not problems, problems


@dataclass
class ValidationReport:
    conditions: dict
    messages: list
    subgroup_order: int
    projection_order: int

    @property
    def ok(self) -> bool:
        return all(self.conditions.values())

    def to_json(self) -> dict:
        return {"ok": self.ok, "conditions": self.conditions, "messages": self.messages,
                "subgroup_order": self.subgroup_order, "projection_order": self.projection_order}


def validate(datum: BdFDatum) -> ValidationReport:
    n, ranks = datum.n, datum.ranks
    msgs = []
    rho1, rho2 = ranks.get(1, 0), ranks.get(2, 0)
    ranks_ok = rho1 >= 1 and rho1 % 2 == 0 and rho2 % 2 == 0
    if not ranks_ok:
        msgs.append(f"need rho_1 >= 1 and rho_1, rho_2 even (got {rho1}, {rho2})")
    beta_order = additive_order(datum.beta1, n)
    if beta_order != n:
        msgs.append(f"beta_1 has order {beta_order}, not {n}")
    sub = validate_subgroup(datum.module, datum.subgroup_gens)
    if not sub.B:
        msgs.append(f"Lambda^0 meets blocks {sub.failing_divisors}")
    P = datum.projection_to_block1()
    beta_group = Subgroup.generated_by([datum.beta1], P.moduli)
    C = P.intersection_order(beta_group) == 1
    if not C:
        msgs.append("projection of Lambda^0 to A_1 meets <beta_1>")
    hodge_ok, hodge_msgs = hodge_admissible(n, ranks, datum.hodge_dims)
    msgs += hodge_msgs
    if not datum.contained:
        msgs.append("a generator is not an (Q_n/Phi_d)-torsion point of its block")
    conditions = {
        "ranks": ranks_ok,
        "beta_order": beta_order == n,
        "A": sub.A,
        "B": sub.B,
        "C": C,
        "hodge": hodge_ok,
        "containment": datum.contained,
    }
    return ValidationReport(conditions, msgs, sub.order, P.order)


def check_free_action(datum: BdFDatum) -> bool:
    """No power g^h with 0 < h < n has a fixed point: h beta_1 never lies in the projection."""
    P = datum.projection_to_block1()
    n = datum.n
    for h in range(1, n):
        if P.contains(tuple(h * a % n for a in datum.beta1)):
            return False
    return True


def reconstruct_lattice(datum: BdFDatum) -> Lattice:
    return lattice_from_data(datum.module, datum.subgroup_gens)


# ---------------------------------------------------------------------------
# census of subgroups


def _orbit(module: FiniteZxModule, c) -> list:
    out = [tuple(c)]
    cur = module.x_coords(c)
    while cur != out[0]:
        out.append(cur)
        cur = module.x_coords(cur)
    return out


def enumerate_subgroups(n: int, ranks: dict, budget: int = DEFAULT_BUDGET) -> list:
    """All x-stable subgroups of the ambient module meeting no block nontrivially.

    Breadth-first: a valid subgroup is extended by the x-orbit of one coset
    representative at a time; extensions violating the block condition are
    dropped, which is safe because that condition passes to subgroups.
    """
    module = FiniteZxModule(n, ranks)
    if module.order > budget:
        raise BudgetExceeded(module.order, budget)
    moduli = module.moduli
    blocks = [module.block_subgroup(d) for d in module.divisor_coord_ranges()]
    zero = Subgroup.generated_by([], moduli)
    seen = {zero.basis: zero}
    queue = deque([zero])
    orbit_cache: dict = {}
    while queue:
        H = queue.popleft()
        tried = set()
        for g in H.coset_representatives():
            if not any(g):
                continue
            orbit = orbit_cache.get(g)
            if orbit is None:
                orbit = orbit_cache.setdefault(g, _orbit(module, g))
            K = Subgroup.generated_by(list(H.basis) + orbit, moduli)
            if K.basis in seen or K.basis in tried:
                continue
            tried.add(K.basis)
            if all(K.intersection_order(B) == 1 for B in blocks):
                seen[K.basis] = K
                queue.append(K)
    return sorted(seen.values(), key=lambda S: (S.order, S.basis))


def census_json(n: int, ranks: dict, budget: int = DEFAULT_BUDGET) -> dict:
    module = FiniteZxModule(n, ranks)
    subs = enumerate_subgroups(n, ranks, budget)
    entries = []
    for S in subs:
        entries.append({
            "order": S.order,
            "group": S.group().to_json(),
            "generators": [list(g) for g in S.generators()],
            "generators_blocks": [module.to_blocks(module.lift(g)) for g in S.generators()],
            "valid": subgroup_is_valid(module, S),
        })
    return {"schema": 1, "n": n, "ranks": {str(d): r for d, r in module.ranks.items()},
            "ambient_moduli": list(module.moduli), "ambient_order": module.order,
            "count": len(entries), "subgroups": entries}


# ---------------------------------------------------------------------------
# Hodge dimension vectors


def admissible_hodge_vectors(n: int, ranks: dict) -> list:
    rho1, rho2 = ranks.get(1, 0), ranks.get(2, 0)
    if rho1 % 2 or rho2 % 2:
        raise OddRank(f"rho_1 = {rho1}, rho_2 = {rho2} must be even")
    per_divisor = []
    for d in divisors(n):
        rho = ranks.get(d, 0)
        if rho == 0:
            continue
        if d <= 2:
            per_divisor.append([(d, {1: rho // 2})])
            continue
        low = [j for j in coprime_residues(d) if 2 * j < d]
        options = []
        for dims in itertools.product(range(rho + 1), repeat=len(low)):
            m = {}
            for j, v in zip(low, dims):
                m[j] = v
                m[d - j] = rho - v
            options.append((d, dict(sorted(m.items()))))
        per_divisor.append(options)
    return [dict(choice) for choice in itertools.product(*per_divisor)]
