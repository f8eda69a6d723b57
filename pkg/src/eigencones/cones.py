"""Eigencone inequality systems, membership, and the verification drivers.

An inequality sum_i <omega_P, w_i^-1 lambda_i> <= 0 is stored as one
primitive integer normal vector per slot (fundamental-weight coordinates)
plus the single positive rational relating the integers back to the
Killing-form pairing.  Systems are deduplicated up to positive scalars,
which after clearing to primitive integers means exact equality of the
concatenated normals.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .errors import ConfigurationError, UsageError, VerificationError
from .rootsys import RootSystem, Weight, build_embedding, build_root_system
from .schubert import flag_variety, point_product_tuples
from .weyl import (
    ParabolicSpec,
    embed_element,
    minimal_coset_reps,
    verify_dual_commutes,
    word_str,
)

SCHEMA_VERSION = 1
TIERS = ("nonzero", "point", "levi")


@dataclass(frozen=True)
class Inequality:
    """One eigencone wall: parabolic node, Weyl words, integer normals.

    The constraint is sum_i normals[i] . lambda_i <= 0 over fundamental
    weight coordinates, and normals[i] . lambda_i = scale * <omega_P,
    w_i^-1 lambda_i> with a single positive scale for all slots.
    """

    parabolic: int
    words: tuple
    normals: tuple
    scale: Fraction
    tier: str
    multiplicity: int

    def __post_init__(self):
        if self.scale <= 0:
            raise UsageError("normal scale must be positive")
        flat = [x for slot in self.normals for x in slot]
        if gcd(*flat) != 1:
            raise UsageError("normals are not jointly primitive")

    @property
    def n(self):
        return len(self.normals)

    def evaluate(self, coord_tuples):
        total = 0
        for slot, lam in zip(self.normals, coord_tuples, strict=True):
            total += sum(a * b for a, b in zip(slot, lam, strict=True))
        return total

    def holds(self, coord_tuples):
        return self.evaluate(coord_tuples) <= 0

    def key(self):
        return tuple(x for slot in self.normals for x in slot)


@dataclass(frozen=True)
class IneqSystem:
    root_system: RootSystem
    n: int
    tier: str
    inequalities: tuple

    def __post_init__(self):
        keys = [q.key() for q in self.inequalities]
        if len(set(keys)) != len(keys):
            raise UsageError("system contains proportional inequalities")

    def membership(self, lams):
        return membership(lams, self)

    def to_json(self):
        return {
            "schema_version": SCHEMA_VERSION,
            "group": {"kind": self.root_system.kind, "rank": self.root_system.rank},
            "n": self.n,
            "tier": self.tier,
            "inequalities": [
                {
                    "parabolic": q.parabolic,
                    "words": list(q.words),
                    "normals": [list(slot) for slot in q.normals],
                    "scale": f"{q.scale.numerator}/{q.scale.denominator}",
                    "multiplicity": q.multiplicity,
                }
                for q in self.inequalities
            ],
        }

    def dumps(self):
        return json.dumps(self.to_json(), indent=2, sort_keys=True)


def system_from_json(doc):
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise ConfigurationError("unsupported inequality schema version")
    R = build_root_system(doc["group"]["kind"], doc["group"]["rank"])
    ineqs = []
    for rec in doc["inequalities"]:
        num, den = rec["scale"].split("/")
        ineqs.append(
            Inequality(
                parabolic=rec["parabolic"],
                words=tuple(rec["words"]),
                normals=tuple(tuple(int(x) for x in slot) for slot in rec["normals"]),
                scale=Fraction(int(num), int(den)),
                tier=doc["tier"],
                multiplicity=rec["multiplicity"],
            )
        )
    return IneqSystem(R, doc["n"], doc["tier"], tuple(ineqs))


def _raw_normals(F, ws):
    """Per-slot functionals lambda -> <omega_P, w^-1 lambda> over fw coords."""
    R = F.root_system
    omega_p = R.fundamental_weights[F.parabolic.excluded - 1]
    slots = []
    for w in ws:
        u = w.inverse()
        row = []
        for j in range(R.rank):
            unit = tuple(Fraction(1) if t == j else Fraction(0) for t in range(R.rank))
            row.append(R.killing(omega_p, R.from_fw(u.apply_fw(unit))))
        slots.append(tuple(row))
    return tuple(slots)


def _primitive(slots):
    flat = [x for slot in slots for x in slot]
    mult = lcm(*(x.denominator for x in flat))
    ints = [x * mult for x in flat]
    g = gcd(*(int(x) for x in ints))
    scale = Fraction(mult, g)
    rank = len(slots[0])
    cleared = tuple(
        tuple(int(x * scale) for x in slot) for slot in slots
    )
    return cleared, scale


def generate_inequalities(R: RootSystem, n, tier, tuple_cap=None):
    """The tier's inequality system over all maximal parabolics of R.

    tier "nonzero" takes every product m [pt] with m >= 1; "point"
    restricts to m = 1; "levi" additionally requires Levi-movability.
    Deterministic order: parabolic ascending, then tuple enumeration order.
    """
    if tier not in TIERS:
        raise UsageError(f"tier must be one of {TIERS}")
    if n < 1:
        raise UsageError("n must be >= 1")
    filter = "levi" if tier == "levi" else "point"
    seen = {}
    for p in range(1, R.rank + 1):
        F = flag_variety(R, p)
        kwargs = {} if tuple_cap is None else {"tuple_cap": tuple_cap}
        for pt in point_product_tuples(F, n, filter=filter, **kwargs):
            if tier in ("point", "levi") and pt.multiplicity != 1:
                continue
            normals, scale = _primitive(_raw_normals(F, pt.elements))
            q = Inequality(
                parabolic=p,
                words=pt.words,
                normals=normals,
                scale=scale,
                tier=tier,
                multiplicity=pt.multiplicity,
            )
            seen.setdefault(q.key(), q)
    return IneqSystem(R, n, tier, tuple(seen.values()))


def _coords_of(lam, R):
    if isinstance(lam, Weight):
        if lam.root_system is not R:
            raise UsageError("weight belongs to a different root system")
        return lam.coords
    return tuple(Fraction(x) for x in lam)


def membership(lams, S: IneqSystem):
    """(member?, violated inequalities); exact rational evaluation."""
    if len(lams) != S.n:
        raise UsageError(f"expected {S.n} weights, got {len(lams)}")
    coords = [_coords_of(lam, S.root_system) for lam in lams]
    for c in coords:
        if any(x < 0 for x in c):
            raise UsageError("membership requires dominant weights")
    violated = [q for q in S.inequalities if q.evaluate(coords) > 0]
    return len(violated) == 0, violated


# -- the B/C projection ------------------------------------------------------


def project_weight_BC(lam: Weight, s) -> Weight:
    """Truncate to the first s epsilon coordinates (the rank-lowering map).

    In type C fundamental-weight coordinates this is a_1 .. a_{s-1},
    sum_{i>=s} a_i; type B gets the Coxeter-identified analogue.  A section
    of the epsilon-coordinate inclusion (see include_weight_BC).
    """
    R = lam.root_system
    if R.kind not in ("B", "C"):
        raise UsageError("projection is defined for types B and C")
    if not 1 <= s < R.rank:
        raise UsageError("need 1 <= s < r")
    if not lam.is_dominant():
        raise UsageError("projection requires a dominant weight")
    sub = build_root_system(R.kind, s)
    eps = lam.ambient[:s]
    coords = tuple(
        sub.coroot_pairing(eps, sub.simple_roots[i]) for i in range(s)
    )
    out = Weight(sub, coords)
    assert out.is_dominant()
    return out


def include_weight_BC(lam: Weight, r) -> Weight:
    """Pad the epsilon vector with zeros up to rank r (the cone inclusion)."""
    R = lam.root_system
    if R.kind not in ("B", "C"):
        raise UsageError("inclusion is defined for types B and C")
    if not R.rank < r:
        raise UsageError("need s < r")
    amb = build_root_system(R.kind, r)
    eps = lam.ambient + tuple(Fraction(0) for _ in range(r - R.rank))
    coords = tuple(amb.coroot_pairing(eps, amb.simple_roots[i]) for i in range(r))
    return Weight(amb, coords)


def projection_step_invariance(kind, r):
    """<omega_P, w^-1 lambda> is unchanged by the one-step projection.

    Checked exactly on every fundamental weight of the rank-r group, for
    every maximal parabolic of the rank r-1 subgroup and every minimal
    coset representative, with the subgroup element acting through the
    subsystem embedding.  Returns the number of identities checked.
    """
    if kind not in ("B", "C"):
        raise UsageError("the projection chain lives in types B and C")
    case = "c-in-c" if kind == "C" else "b-in-b"
    E = build_embedding(case, r=r, s=r - 1)
    amb, sub = E.ambient, E.sub
    checked = 0
    for k in range(1, r):
        P = ParabolicSpec(amb, E.matched_parabolic(k))
        omega_p = amb.fundamental_weights[P.excluded - 1]
        for w in minimal_coset_reps(sub, ParabolicSpec(sub, k)):
            img_inv = embed_element(E, w).inverse()
            for j in range(r):
                lam = Weight(amb, tuple(
                    Fraction(1) if t == j else Fraction(0) for t in range(r)
                ))
                proj = project_weight_BC(lam, r - 1)
                padded = include_weight_BC(proj, r)
                diff = tuple(
                    a - b for a, b in zip(lam.ambient, padded.ambient)
                )
                if amb.killing(omega_p, img_inv.apply_eps(diff)) != 0:
                    raise VerificationError(
                        f"projection invariance fails at P{P.excluded}, "
                        f"w={word_str(w)}, omega_{j+1}"
                    )
                checked += 1
    return checked


# -- verification drivers ----------------------------------------------------


def verify_subeigencone(case, params, n):
    """Check that an embedding case transports Levi-movable walls upward.

    For each matched parabolic pair (Q, P) and every Levi-movable product
    equal to 1 [pt] over M/Q, the embedded tuple's product over G/P must be
    a positive point multiple and Levi-movable; the per-tuple ambient
    multiplicity is reported.  The G2-in-F4 case instead checks that the
    coset map commutes with duals over both pairs.
    """
    if n < 2:
        raise UsageError("need n >= 2")
    E = build_embedding(case, **params)
    report = {
        "schema_version": SCHEMA_VERSION,
        "case": E.case,
        "params": dict(params),
        "n": n,
        "pairs": [],
        "ok": True,
    }
    if E.case == "g2-in-f4":
        report["mode"] = "dual-commutation"
        for q, _p in E.parabolic_map:
            pair = verify_dual_commutes(E, q)
            report["pairs"].append(pair)
            report["ok"] = report["ok"] and pair["all_commute"]
        return report

    report["mode"] = "ambient-products"
    for q, p in E.parabolic_map:
        FM = flag_variety(E.sub, q)
        FG = flag_variety(E.ambient, p)
        P = ParabolicSpec(E.ambient, p)
        rows = []
        pair_ok = True
        for pt in point_product_tuples(FM, n, filter="levi"):
            if pt.multiplicity != 1:
                continue
            ambient = tuple(
                embed_element(E, w, minimize_into=P) for w in pt.elements
            )
            codim_sum = sum(FG.codim(w) for w in ambient)
            if codim_sum != FG.dim:
                rows.append(
                    {"words": pt.words, "ok": False,
                     "reason": f"ambient codim sum {codim_sum} != {FG.dim}"}
                )
                pair_ok = False
                continue
            movable, m = FG.is_levi_movable(ambient)
            ok = m >= 1 and movable
            rows.append(
                {
                    "words": pt.words,
                    "ambient_words": tuple(word_str(w) for w in ambient),
                    "ambient_multiplicity": m,
                    "levi_movable": movable,
                    "ok": ok,
                }
            )
            pair_ok = pair_ok and ok
        report["pairs"].append(
            {"sub_parabolic": q, "ambient_parabolic": p,
             "tuples": rows, "all_ok": pair_ok}
        )
        report["ok"] = report["ok"] and pair_ok
    return report


def _grid_scan(tables, sub_tables, n, n_slots, zero_index):
    """Membership scan of the full grid; numpy-accelerated when available.

    Returns (member count, violation records, boundary witness combos).
    A violation names the offending index combo; the boundary list holds
    one tight combo per ambient inequality (the all-zero combo when no
    grid member is tight on that wall).
    """
    try:
        import numpy as np
    except ImportError:
        np = None

    zero_combo = (zero_index,) * n

    if np is not None:
        def outer_sum(table):
            total = np.zeros((n_slots,) * n, dtype=np.int64)
            for i in range(n):
                shape = [1] * n
                shape[i] = n_slots
                total = total + np.asarray(table[i], dtype=np.int64).reshape(shape)
            return total

        member = np.ones((n_slots,) * n, dtype=bool)
        amb_sums = []
        for t in tables:
            sums = outer_sum(t)
            amb_sums.append(sums)
            member &= sums <= 0
        violating = np.zeros((n_slots,) * n, dtype=bool)
        for t in sub_tables:
            violating |= outer_sum(t) > 0
        bad = member & violating
        violations = [
            {"tuple": tuple(int(i) for i in combo)}
            for combo in np.argwhere(bad)
        ]
        boundary = []
        for qi, sums in enumerate(amb_sums):
            tight = member & (sums == 0)
            idx = np.argwhere(tight)
            witness = tuple(int(i) for i in idx[0]) if len(idx) else zero_combo
            boundary.append(witness)
            if any(
                sum(t[i][witness[i]] for i in range(n)) > 0 for t in sub_tables
            ):
                violations.append({"facet": qi, "tuple": witness})
        return int(member.sum()), violations, boundary

    import itertools

    members = []
    for combo in itertools.product(range(n_slots), repeat=n):
        if all(sum(t[i][combo[i]] for i in range(n)) <= 0 for t in tables):
            members.append(combo)
    violations = [
        {"tuple": combo}
        for combo in members
        if any(sum(t[i][combo[i]] for i in range(n)) > 0 for t in sub_tables)
    ]
    boundary = []
    for qi, t in enumerate(tables):
        witness = next(
            (c for c in members if sum(t[i][c[i]] for i in range(n)) == 0),
            zero_combo,
        )
        boundary.append(witness)
        if any(
            sum(st[i][witness[i]] for i in range(n)) > 0 for st in sub_tables
        ):
            violations.append({"facet": qi, "tuple": witness})
    return len(members), violations, boundary


def _grid_coords(rank, top):
    def rec(i):
        if i == rank:
            yield ()
            return
        for rest in rec(i + 1):
            for a in range(top + 1):
                yield (a,) + rest

    return [c for c in rec(0)]


def verify_projection(r, s, n, kind="C", grid_top=3):
    """Grid-and-facet check of the projection theorem at one (r, s).

    Over all weight tuples with fundamental-weight coordinates in
    {0..grid_top}: every ambient tier=levi member projects into the rank-s
    tier=levi cone; one boundary point per ambient facet is checked too
    (the all-zero tuple when no grid member is tight); pi o iota is the
    identity on the sub grid; the per-step pairing invariance holds.
    """
    if not 1 <= s < r:
        raise UsageError("need 1 <= s < r")
    amb = build_root_system(kind, r)
    sub = build_root_system(kind, s)
    SG = generate_inequalities(amb, n, "levi")
    SM = generate_inequalities(sub, n, "levi")

    slot_coords = _grid_coords(r, grid_top)
    # projection of integer fw coordinates stays integral in both types
    proj_coords = []
    for c in slot_coords:
        p = project_weight_BC(Weight(amb, tuple(Fraction(x) for x in c)), s)
        assert all(x.denominator == 1 for x in p.coords)
        proj_coords.append(tuple(int(x) for x in p.coords))

    # per inequality, per slot, the value on each grid weight
    def value_tables(system, coords):
        return [
            [
                [sum(a * b for a, b in zip(q.normals[i], c)) for c in coords]
                for i in range(n)
            ]
            for q in system.inequalities
        ]

    tables = value_tables(SG, slot_coords)
    sub_tables = value_tables(SM, proj_coords)

    member_count, violations, boundary = _grid_scan(
        tables, sub_tables, n, len(slot_coords), slot_coords.index((0,) * r)
    )

    section_ok = True
    for c in _grid_coords(s, grid_top):
        lam = Weight(sub, tuple(Fraction(x) for x in c))
        back = project_weight_BC(include_weight_BC(lam, r), s)
        if back.coords != lam.coords:
            section_ok = False

    invariance_checked = sum(
        projection_step_invariance(kind, t) for t in range(s + 1, r + 1)
    )

    return {
        "schema_version": SCHEMA_VERSION,
        "kind": kind,
        "r": r,
        "s": s,
        "n": n,
        "grid_top": grid_top,
        "ambient_inequalities": len(SG.inequalities),
        "sub_inequalities": len(SM.inequalities),
        "grid_members": member_count,
        "boundary_points": len(boundary),
        "violations": violations,
        "section_identity": section_ok,
        "invariance_checks": invariance_checked,
        "ok": not violations and section_ok,
    }


# -- grid helpers for region comparisons ------------------------------------


def feasible_on_grid(S: IneqSystem, slot_coords, n=None):
    """Index tuples of slot_coords entries satisfying every inequality."""
    n = S.n if n is None else n
    import itertools

    out = set()
    coords = [tuple(Fraction(x) for x in c) for c in slot_coords]
    for combo in itertools.product(range(len(coords)), repeat=n):
        lams = [coords[i] for i in combo]
        if all(q.evaluate(lams) <= 0 for q in S.inequalities):
            out.add(combo)
    return out


def regions_agree_on_grid(S1: IneqSystem, S2: IneqSystem, slot_coords):
    """True when both systems cut out the same members from the grid.

    slot_coords may be rational; each system is evaluated after joint
    integer scaling so the comparison is exact.
    """
    if S1.n != S2.n or S1.root_system is not S2.root_system:
        raise UsageError("systems must share group and n")
    n = S1.n
    coords = [tuple(Fraction(x) for x in c) for c in slot_coords]
    denom = lcm(*(x.denominator for c in coords for x in c)) if coords else 1
    int_coords = [tuple(int(x * denom) for x in c) for c in coords]

    def tables(S):
        return [
            [
                [sum(a * b for a, b in zip(q.normals[i], c)) for c in int_coords]
                for i in range(n)
            ]
            for q in S.inequalities
        ]

    t1, t2 = tables(S1), tables(S2)
    try:
        import numpy as np
    except ImportError:
        np = None
    if np is not None:
        def mask(ts):
            out = np.ones((len(int_coords),) * n, dtype=bool)
            for t in ts:
                total = np.zeros((len(int_coords),) * n, dtype=np.int64)
                for i in range(n):
                    shape = [1] * n
                    shape[i] = len(int_coords)
                    total = total + np.asarray(t[i], dtype=np.int64).reshape(shape)
                out &= total <= 0
            return out

        return bool(np.array_equal(mask(t1), mask(t2)))

    import itertools

    for combo in itertools.product(range(len(int_coords)), repeat=n):
        in1 = all(sum(t[i][combo[i]] for i in range(n)) <= 0 for t in t1)
        in2 = all(sum(t[i][combo[i]] for i in range(n)) <= 0 for t in t2)
        if in1 != in2:
            return False
    return True


def half_integer_grid(rank, top=2):
    """All fw-coordinate tuples with entries 0, 1/2, 1, ..., top."""
    steps = [Fraction(k, 2) for k in range(2 * top + 1)]

    def rec(i):
        if i == rank:
            yield ()
            return
        for rest in rec(i + 1):
            for a in steps:
                yield (a,) + rest

    return list(rec(0))


def facet_witnesses(S: IneqSystem, slot_coords):
    """Per inequality, a grid tuple tight on it and strict on all others.

    Returns a list of (inequality index, witness or None); witness search
    is a plain scan over the grid, so misses are possible at coarse
    resolution and are reported rather than fatal.
    """
    import itertools

    coords = [tuple(Fraction(x) for x in c) for c in slot_coords]
    values = {}
    for combo in itertools.product(range(len(coords)), repeat=S.n):
        lams = [coords[i] for i in combo]
        vals = [q.evaluate(lams) for q in S.inequalities]
        if all(v <= 0 for v in vals):
            values[combo] = vals
    out = []
    for qi in range(len(S.inequalities)):
        witness = None
        for combo, vals in values.items():
            if vals[qi] == 0 and all(
                v < 0 for i, v in enumerate(vals) if i != qi
            ):
                witness = combo
                break
        out.append((qi, witness))
    return out
