"""End-to-end verification battery for the bad bigraded algebra
R = k[x,y,a,b]/(bx, xy, ax-by, x^2-y^2): the bihomogeneous basis counts, the
four stored differential matrices of the minimal resolution of the ideal
(a, b), and the characteristic-dependent quadratic syzygy that obstructs
Koszulness (homological degree 4 and total degree 6 in characteristic two,
homological degree 5 and total degree 7 otherwise)."""

from __future__ import annotations

from dataclasses import dataclass

from . import linalg
from .field import Field, GF, QQ
from .groebner import Ideal, normal_form
from .modules import FreeModule, PolyMatrix
from .quotient import QuotientRing, TruncatedResolution, resolve_over_quotient
from .ring import Deg, Polynomial, RingContext, total


@dataclass
class AppendixInstance:
    field: Field
    ring: RingContext
    ideal: Ideal
    quotient: QuotientRing
    module_gens: list[Polynomial]
    differentials: list[PolyMatrix]
    stage_twists: list[list[Deg]]


_STAGE_TWISTS = [
    [(0, 1), (0, 1)],
    [(1, 1), (1, 1), (0, 2)],
    [(2, 1), (2, 1), (1, 2), (1, 2), (1, 2), (1, 2)],
    [(3, 1)] * 2 + [(2, 2)] * 7 + [(1, 3)] * 2,
    [(4, 1)] * 2 + [(3, 2)] * 10 + [(2, 3)] * 8,
]

# entries as strings over x, y, a, b; rows of each differential
_D1 = [
    ["x", "0", "b"],
    ["-y", "x", "-a"],
]
_D2 = [
    ["y", "0", "b", "0", "-b", "-a"],
    ["x", "y", "a", "b", "0", "0"],
    ["0", "0", "0", "0", "x", "y"],
]
_D3 = [
    ["x", "0", "0", "-b", "0", "0", "b", "b", "a", "0", "0"],
    ["-y", "x", "-b", "-a", "0", "-b", "0", "0", "-b", "0", "0"],
    ["0", "0", "x", "y", "0", "0", "0", "0", "0", "0", "b"],
    ["0", "0", "0", "0", "x", "y", "0", "0", "0", "0", "-a"],
    ["0", "0", "0", "0", "0", "0", "y", "0", "-x", "a", "b"],
    ["0", "0", "0", "0", "0", "0", "0", "x", "y", "-b", "0"],
]
_D4 = [
    ["y", "0", "b", "0", "-b", "-b", "-a", "0", "0", "-b", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0"],
    ["x", "y", "a", "b", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0"],
    ["0", "0", "0", "0", "y", "0", "-x", "0", "0", "0", "0", "0", "0", "-b", "-a", "-b", "a", "0", "0", "0"],
    ["0", "0", "0", "0", "0", "x", "y", "0", "0", "0", "0", "0", "0", "0", "b", "0", "-b", "0", "0", "-b"],
    ["0", "0", "0", "0", "0", "0", "0", "y", "0", "-x", "0", "0", "b", "-a", "0", "0", "0", "0", "a", "0"],
    ["0", "0", "0", "0", "0", "0", "0", "0", "x", "y", "0", "0", "0", "b", "0", "0", "0", "0", "0", "a"],
    ["0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "x", "y", "0", "0", "0", "0", "-b", "-a", "0", "-b"],
    ["0", "0", "0", "0", "0", "0", "2y", "0", "0", "0", "0", "-2y", "0", "0", "b", "-a", "0", "a", "0", "0"],
    ["0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "x", "0", "0", "0", "b", "0", "0", "0", "0"],
    ["0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "x", "y", "0", "0"],
    ["0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "x", "y"],
]

CHARACTERISTIC_BATTERY = ("F2", "F3", "F7", "F32003", "QQ")


def make_instance(field: Field) -> AppendixInstance:
    ring = RingContext(field, ["x", "y", "a", "b"], [(1, 0), (1, 0), (0, 1), (0, 1)])
    x, y, a, b = (ring.var(i) for i in range(4))
    I = Ideal([b * x, x * y, a * x - b * y, x * x - y * y], ring)
    Q = QuotientRing(I)

    def parse_entry(s: str) -> Polynomial:
        neg = s.startswith("-")
        body = s[1:] if neg else s
        if body == "0":
            return ring.zero()
        if body == "2y":
            f = y.scale(field.from_int(2))
        else:
            f = {"x": x, "y": y, "a": a, "b": b}[body]
        return -f if neg else f

    mats = []
    for rows, ti, si in (
        (_D1, 0, 1),
        (_D2, 1, 2),
        (_D3, 2, 3),
        (_D4, 3, 4),
    ):
        tgt = FreeModule(ring, _STAGE_TWISTS[ti])
        src = FreeModule(ring, _STAGE_TWISTS[si])
        entries = [[parse_entry(s) for s in row] for row in rows]
        mats.append(PolyMatrix(tgt, src, entries))
    return AppendixInstance(field, ring, I, Q, [a, b], mats, _STAGE_TWISTS)


def reference_basis_count(d: Deg) -> int:
    """Count of {a^i b^j, x a^i, y a^i, x^2} in bidegree d = (p, q)."""
    p, q = d
    if p == 0:
        return q + 1  # a^i b^j with i + j = q
    if p == 1:
        return 2  # x a^q and y a^q
    if p == 2 and q == 0:
        return 1  # x^2
    return 0


def check_basis(inst: AppendixInstance, bound: int = 6) -> dict:
    """Standard-monomial dimensions of every bidegree up to the bound match
    the explicit bihomogeneous basis, and the listed monomials are
    independent (they are distinct standard monomials)."""
    Q = inst.quotient
    ring = inst.ring
    failures = []
    checked = 0
    for t in range(bound + 1):
        for p in range(t + 1):
            d = (p, t - p)
            got = Q.dim_piece(d)
            want = reference_basis_count(d)
            checked += 1
            if got != want:
                failures.append({"bidegree": list(d), "dim": got, "expected": want})
            if want and p <= 2:
                # the listed spanning monomials must be linearly independent
                # in the graded piece (their normal forms have full rank)
                q = t - p
                if p == 0:
                    listed = [(0, 0, i, q - i) for i in range(q + 1)]
                elif p == 1:
                    listed = [(1, 0, q, 0), (0, 1, q, 0)]
                else:
                    listed = [(2, 0, 0, 0)] if q == 0 else []
                K = inst.field
                vecs = [
                    Q.coords(Polynomial(ring, {m: K.one()}), d) for m in listed
                ]
                if vecs and linalg.rank(K, vecs) != len(listed):
                    failures.append({"bidegree": list(d), "dependent_monomials": [list(m) for m in listed]})
    return {"ok": not failures, "failures": failures, "bidegrees_checked": checked}


def verify_differentials(inst: AppendixInstance) -> dict:
    """Products of consecutive stored differentials vanish in R, column
    counts are (3, 6, 11, 20), entries have no constant terms, and the
    per-bidegree generator counts agree with the engine's resolution."""
    Q = inst.quotient
    ring = inst.ring
    report: dict = {"ok": True, "products": [], "column_counts": [], "minimal": True}

    def nf_matrix_zero(M: PolyMatrix) -> tuple[bool, tuple | None]:
        for r in range(M.nrows):
            for c in range(M.ncols):
                f = M.entries[r][c]
                if f and Q.nf(f):
                    return False, (r, c)
        return True, None

    # the augmentation: (a, b) composed with the first differential
    aug = PolyMatrix(
        FreeModule(ring, [ring.zero_deg]),
        FreeModule(ring, _STAGE_TWISTS[0]),
        [[inst.module_gens[0], inst.module_gens[1]]],
    )
    chain = [aug] + inst.differentials
    for i in range(len(chain) - 1):
        prod = chain[i].compose(chain[i + 1])
        ok, where = nf_matrix_zero(prod)
        report["products"].append({"index": i + 1, "zero": ok, "failure_at": where})
        report["ok"] = report["ok"] and ok
    report["column_counts"] = [d.ncols for d in inst.differentials]
    if report["column_counts"] != [3, 6, 11, 20]:
        report["ok"] = False
    for d in inst.differentials:
        for r in range(d.nrows):
            for c in range(d.ncols):
                f = d.entries[r][c]
                if f and f.is_constant():
                    report["minimal"] = False
                    report["ok"] = False
    # engine comparison: per-bidegree generator counts
    res = resolve_over_quotient(Q, ("module", inst.module_gens), 4, 7)
    engine_counts = [
        {tuple(d): degs.count(d) for d in set(degs)} for degs in res.gen_degrees
    ]
    golden_counts = [
        {d: tw.count(d) for d in set(tw)} for tw in _STAGE_TWISTS
    ]
    if inst.field.char == 2:
        # the displayed fourth differential is incomplete in characteristic
        # two: an extra quadratic generator of bidegree (4, 2) appears
        extra = dict(golden_counts[4])
        extra[(4, 2)] = extra.get((4, 2), 0) + 1
        golden_counts[4] = extra
    report["bidegree_counts_match"] = engine_counts == golden_counts
    report["engine_counts"] = [{str(k): v for k, v in c.items()} for c in engine_counts]
    report["ok"] = report["ok"] and report["bidegree_counts_match"]
    if inst.field.char == 2:
        report["char2_quadratic_syzygy"] = _char2_extra_syzygy(inst)
        report["ok"] = report["ok"] and report["char2_quadratic_syzygy"]["confirmed"]
    return report


def _char2_extra_syzygy(inst: AppendixInstance) -> dict:
    """In characteristic two the vector with x^2 in the eighth coordinate is
    a syzygy of the third differential lying outside the span of the stored
    fourth differential's columns in bidegree (4, 2)."""
    Q = inst.quotient
    ring = inst.ring
    K = inst.field
    d3, d4 = inst.differentials[2], inst.differentials[3]
    x2 = ring.var(0) * ring.var(0)
    s_entries = [ring.zero()] * 11
    s_entries[7] = x2
    # check d3 . s = 0 in R
    image_ok = True
    for r in range(d3.nrows):
        acc = ring.zero()
        for c in range(11):
            if s_entries[c]:
                acc = acc + d3.entries[r][c] * s_entries[c]
        if Q.nf(acc):
            image_ok = False
    # coordinates of the (4,2)-piece of the stage-3 source module
    target_deg = (4, 2)
    twists = _STAGE_TWISTS[3]

    def coords_of(entries) -> list:
        vec: list = []
        for c, tw in enumerate(twists):
            piece = tuple(a - b for a, b in zip(target_deg, tw))
            if any(t < 0 for t in piece):
                continue
            vec.extend(Q.coords(entries[c], piece))
        return vec

    sb = linalg.SpanBuilder(K, len(coords_of(s_entries)))
    for c in range(d4.ncols):
        col_deg = d4.source.twists[c]
        mult_deg = tuple(a - b for a, b in zip(target_deg, col_deg))
        if any(t < 0 for t in mult_deg):
            continue
        for m in Q.std_basis(mult_deg):
            scaled = [
                d4.entries[r][c].mul_term(m, K.one()) if d4.entries[r][c] else ring.zero()
                for r in range(11)
            ]
            sb.add(coords_of(scaled))
    outside = not sb.contains(coords_of(s_entries))
    return {"is_syzygy": image_ok, "outside_displayed_span": outside, "confirmed": image_ok and outside}


def find_obstruction(inst: AppendixInstance, bound: int | None = None) -> dict:
    """First non-linear minimal generator position of the resolution of the
    ideal (a, b) over R; the generators of the ideal sit at homological
    degree zero with total degree one."""
    char2 = inst.field.char == 2
    if bound is None:
        bound = 4 if char2 else 5
    res = resolve_over_quotient(inst.quotient, ("module", inst.module_gens), bound, bound + 2)
    pos = res.first_nonlinear(offset=1)
    if pos is None:
        return {"found": False, "bound": bound, "ranks": res.ranks()}
    return {
        "found": True,
        "hom_degree": pos[0],
        "bidegree": list(pos[1]),
        "total_degree": total(pos[1]),
        "ranks": res.ranks(),
        "expected": {"hom_degree": 4 if char2 else 5, "total_degree": 6 if char2 else 7},
    }


def run_characteristic(field_name: str, basis_bound: int = 6) -> dict:
    from .field import field_by_name

    field = field_by_name(field_name)
    inst = make_instance(field)
    basis = check_basis(inst, basis_bound)
    diffs = verify_differentials(inst)
    obs = find_obstruction(inst)
    char2 = field.char == 2
    expected = (4, 6) if char2 else (5, 7)
    obs_ok = obs["found"] and (obs["hom_degree"], obs["total_degree"]) == expected
    return {
        "field": field.name,
        "characteristic": field.char,
        "basis": basis,
        "differentials": diffs,
        "obstruction": obs,
        "ok": basis["ok"] and diffs["ok"] and obs_ok,
    }


def run_battery(field_names=CHARACTERISTIC_BATTERY) -> dict:
    runs = [run_characteristic(nm) for nm in field_names]
    return {"runs": runs, "ok": all(r["ok"] for r in runs)}
