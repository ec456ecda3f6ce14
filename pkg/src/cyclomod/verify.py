"""Batch verification driver and random data generators."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field, fields, replace

from .bdf import BdFDatum, check_free_action, enumerate_subgroups, validate
from .covering import BranchData, genus, homology_one_full, inertia_orders
from .crt import FiniteZxModule
from .cyclotomic import (
    cyclotomic_poly,
    divisors,
    prime_power_relation,
    reduced_power_identity_check,
    ring_structure,
    verify_resultant_theorem,
    x_pow_minus_one,
)
from .intersection import intersection_report
from .intpoly import IntPoly
from .report import Report

CRT_NS = (4, 6, 8, 9, 10, 12, 15, 18, 20, 30)


class UsageError(ValueError):
    pass


@dataclass(frozen=True)
class VerifyConfig:
    n_max: int = 60
    identity_max: int = 200
    disc_max: int = 30
    crt_ns: tuple = CRT_NS
    two_full_cases: int = 100
    one_full_cases: int = 50
    free_action_cases: int = 200
    cover_n_max: int = 12
    cover_k_max: int = 4
    seed: int = 0
    golden: bool = True

    @classmethod
    def scaled(cls, n_max: int) -> "VerifyConfig":
        if n_max < 2:
            raise UsageError("n_max must be >= 2")
        base = cls()
        if n_max >= base.n_max:
            return replace(base, n_max=n_max)
        return replace(base, n_max=n_max, identity_max=n_max, disc_max=min(base.disc_max, n_max),
                       crt_ns=tuple(n for n in CRT_NS if n <= n_max),
                       cover_n_max=max(2, min(base.cover_n_max, n_max)))

    @classmethod
    def from_json(cls, data: dict) -> "VerifyConfig":
        if not isinstance(data, dict) or not data:
            raise UsageError("configuration is empty")
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise UsageError(f"unknown configuration keys {sorted(unknown)}")
        base = cls.scaled(int(data["n_max"])) if "n_max" in data else cls()
        values = {k: (tuple(v) if k == "crt_ns" else v) for k, v in data.items() if k != "n_max"}
        return replace(base, **values)


# ---------------------------------------------------------------------------
# random data


def _units(n: int) -> list:
    return [u for u in range(1, n) if math.gcd(u, n) == 1]


def random_two_full(rng: random.Random, n_max: int = 12, k_max: int = 4) -> BranchData:
    """Branch data with full ramification at 0 and infinity."""
    while True:
        n = rng.randint(2, n_max)
        k = rng.randint(1, k_max)
        m0 = rng.choice(_units(n))
        mid = [rng.randint(1, n - 1) for _ in range(k)]
        m_inf = -(m0 + sum(mid)) % n
        if m_inf and math.gcd(m_inf, n) == 1:
            return BranchData(n, (m0, *mid, m_inf))


def random_one_full(rng: random.Random, n_max: int = 12, k_max: int = 4) -> BranchData:
    """Branch data with r_0 = n and r_inf < n."""
    while True:
        n = rng.randint(4, max(4, n_max))
        k = rng.randint(1, k_max)
        m0 = rng.choice(_units(n))
        mid = [rng.randint(1, n - 1) for _ in range(k)]
        m_inf = -(m0 + sum(mid)) % n
        if m_inf and math.gcd(m_inf, n) != 1:
            return BranchData(n, (m0, *mid, m_inf))


def random_bdf_datum(rng: random.Random, n_max: int = 8, max_order: int = 5000):
    """A datum whose Lambda^0 is the x-closure of one random element, or None if (B) fails."""
    n = rng.randint(2, n_max)
    ranks = {}
    for d in divisors(n):
        ranks[d] = rng.choice((1, 2)) if d == 1 else rng.choice((0, 0, 1))
    module = FiniteZxModule(n, ranks)
    if module.order > max_order:
        return None
    c = tuple(rng.randrange(m) for m in module.moduli)
    orbit = [c]
    cur = module.x_coords(c)
    while cur != c:
        orbit.append(cur)
        cur = module.x_coords(cur)
    gens = [{"blocks": module.to_blocks(module.lift(o))} for o in orbit]
    beta = [rng.randrange(n) for _ in range(ranks[1])]
    datum = BdFDatum.build(n, ranks, gens, beta, {})
    rep = validate(datum)
    if not (rep.conditions["A"] and rep.conditions["B"]):
        return None
    return datum


# ---------------------------------------------------------------------------
# the battery


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


@dataclass
class Battery:
    checks: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def add(self, name: str, passed: bool, detail: str = "") -> None:
        self.checks.append(Check(name, bool(passed), detail))


def check_cyclotomic_identity(limit: int) -> list:
    bad = []
    for n in range(1, limit + 1):
        prod = IntPoly((1,))
        for d in divisors(n):
            prod = prod * cyclotomic_poly(d)
        if prod != x_pow_minus_one(n):
            bad.append(n)
    return bad


def check_resultant_table(n_max: int) -> tuple:
    bad, disagreements = [], []
    for m in range(2, n_max + 1):
        for d in range(1, m):
            rc = verify_resultant_theorem(d, m)
            rs = ring_structure(d, m)
            if not rc.match or rs.order != abs(rc.computed_resultant):
                bad.append((d, m))
            if not rs.agrees_with_prediction:
                disagreements.append((d, m))
    return bad, disagreements


def check_reduced_power(n_max: int) -> list:
    bad = []
    for p in (q for q in range(2, n_max + 1) if prime_power_relation(1, q) == (q, 1)):
        for d in range(1, n_max + 1):
            if d % p:
                k = 1
                while p**k * d <= n_max:
                    if not reduced_power_identity_check(d, p, k)["match"]:
                        bad.append((d, p, k))
                    k += 1
    return bad


def two_full_properties(b: BranchData) -> list:
    ir = intersection_report(b)
    g = ir.genus
    failed = []
    if len(ir.form.basis) != 2 * g:
        failed.append("rank")
    if not ir.reduced.has_surface_shape(g):
        failed.append("shape")
    if ir.form.det() != 1 or not ir.form.is_skew():
        failed.append("unimodular")
    if not ir.symplectic():
        failed.append("symplectic")
    if not ir.annihilated_by_qn():
        failed.append("Q_n(M)")
    if not ir.charpoly_matches():
        failed.append("charpoly")
    return failed


def verify_all(config: VerifyConfig | None = None) -> Report:
    from . import commands
    from .cli import run_report

    config = config or VerifyConfig()
    bat = Battery()
    rng = random.Random(config.seed)

    bad = check_cyclotomic_identity(config.identity_max)
    bat.add(f"cyclotomic product identity n <= {config.identity_max}", not bad, str(bad[:5]))

    bad, disagree = check_resultant_table(config.n_max)
    bat.add(f"resultant and beta table d < m <= {config.n_max}", not bad, str(bad[:5]))
    if disagree:
        bat.notes.append((f"computed ring structure differs from the closed-form classification for "
                          f"{len(disagree)} pairs, all with p = 2 and d = 2 mod 4: {disagree}",
                          "ring classification rule"))

    bad = [n for n in range(2, config.disc_max + 1) if not commands.disc_check(n).payload["match"]]
    bat.add(f"discriminant product n <= {config.disc_max}", not bad, str(bad))
    if config.disc_max >= 2:
        bat.notes.append(("the discriminant product holds with squared pairwise resultants only",
                          "discriminant product identity"))

    crt_noniso = []
    for n in config.crt_ns:
        rep = commands.crt_check(n)
        bat.add(f"CRT and cokernel checks n = {n}", rep.exit_status == 0,
                "; ".join(d.message for d in rep.diagnostics if d.severity == "ERROR"))
        if not rep.payload["crt_iso"]:
            crt_noniso.append(n)

    if crt_noniso:
        bat.notes.append((f"Coker i and the pairwise sum agree in order but not as groups for n = {crt_noniso}",
                          "generalized CRT cokernel"))

    bad = check_reduced_power(config.n_max)
    bat.add(f"reduced power identity p^k d <= {config.n_max}", not bad, str(bad))

    if config.golden:
        for case in commands.load_data("published_examples.json")["golden"]:
            rep = run_report(case["argv"])
            payload = rep.to_json()
            wrong = {k: _lookup(payload, k) for k, v in case["expect"].items() if _lookup(payload, k) != v}
            bat.add(f"golden {case['id']}", not wrong and rep.exit_status == 0, str(wrong) if wrong else "")
            for d in rep.diagnostics:
                if d.severity != "ERROR":
                    bat.notes.append((d.message, d.locus))

    failures = []
    for _ in range(config.two_full_cases):
        b = random_two_full(rng, config.cover_n_max, config.cover_k_max)
        f = two_full_properties(b)
        if f:
            failures.append((b.to_json(), f))
    bat.add(f"random two-full covers ({config.two_full_cases})", not failures, str(failures[:3]))

    failures = []
    if config.cover_n_max >= 4:
        for _ in range(config.one_full_cases):
            b = random_one_full(rng, config.cover_n_max, config.cover_k_max)
            if not homology_one_full(b).rank_matches:
                failures.append(b.to_json())
    bat.add(f"random one-full covers ({config.one_full_cases})", not failures, str(failures[:3]))

    count = len(enumerate_subgroups(2, {1: 1, 2: 1}))
    bat.add("subgroup census n = 2, ranks (1, 1)", count == 2, f"count {count}")

    diverge = 0
    tried = 0
    while tried < config.free_action_cases:
        datum = random_bdf_datum(rng, min(8, config.n_max))
        if datum is None:
            continue
        tried += 1
        rep = validate(datum)
        if check_free_action(datum) != (rep.conditions["C"] and rep.conditions["beta_order"]):
            diverge += 1
    bat.add(f"free action agrees with (C) and order ({config.free_action_cases})", diverge == 0,
            f"{diverge} divergences")

    passed = sum(c.passed for c in bat.checks)
    report = Report("verify-all", {
        "config": {f.name: getattr(config, f.name) for f in fields(config)},
        "passed": passed,
        "failed": len(bat.checks) - passed,
        "checks": [c.to_json() for c in bat.checks],
    })
    seen = set()
    for message, locus in bat.notes:
        # one note per locus; the first carries the summary
        if locus not in seen:
            seen.add(locus)
            report.note(message, locus)
    for c in bat.checks:
        if not c.passed:
            report.error(f"{c.name} failed {c.detail}".strip())
    return report


def _lookup(payload: dict, dotted: str):
    cur = payload
    for part in dotted.split("."):
        if not isinstance(cur, dict) or part not in cur:
            return None
        cur = cur[part]
    return cur
