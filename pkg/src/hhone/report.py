"""Report assembly and deterministic rendering.

A verification report is a plain dict with no timestamps, so both
renderings are byte-stable across runs: `to_json` emits UTF-8 JSON with
sorted keys, `to_text` a fixed-width table.  `full_verification` gathers
every check family for one grid point (dimension formulas, the
structural record suite with its pinned deviations, the derivation
oracle cross-check where the raw solve is affordable, the socle-pairing
line, and the socle/center bounds); `scan_summary` tabulates measured
dimensions over a whole grid; `lift_report` packages the integer-lift
suite.
"""

import json

import numpy as np

from .algebra import center, make_qci
from .chebyshev import (
    check_lift,
    commutative_quotient,
    lifted_commutator_space,
    normalized_f,
)
from .derivations import derivation_space, derivations_generic, second_socle_map
from .errors import NotADerivation
from .hh1 import _rec, hh1, verify_dimension_formulas, verify_theorem_1_1
from .socle_bounds import check_asoca, check_brandt, check_socle_bound

__all__ = [
    "full_verification",
    "scan_summary",
    "lift_report",
    "to_json",
    "to_text",
]

# bimodule hom solves grow as n^2 unknowns; past this they refuse to run
ASOCA_UNKNOWN_LIMIT = 5000


def grid_points(p_max):
    """All (p, e) with p an odd prime <= p_max, e | p-1, e >= 2, in order."""
    points = []
    for p in range(3, p_max + 1):
        if all(p % d for d in range(2, int(p**0.5) + 1)):
            points.extend((p, e) for e in range(2, p) if (p - 1) % e == 0)
    return points


def full_verification(p, e, q=None):
    """Every check family at one grid point, as a single report dict."""
    records = verify_dimension_formulas(p, e, q)
    records += verify_theorem_1_1(p, e, q)
    A = make_qci(p, e, q)

    if p <= 5:
        closed = derivation_space(A)
        raw = derivations_generic(A)
        _rec(records, "lemma4.4.oracle_equivalence",
             "closed-form derivation space = raw Leibniz nullspace",
             True, closed.contains_space(raw) and raw.contains_space(closed))

    try:
        second_socle_map(A, [[0, 1], [p - 1, 0]])
        accepted = True
    except NotADerivation:
        accepted = False
    try:
        second_socle_map(A, [[1, 0], [0, 0]])
        rejected = False
    except NotADerivation:
        rejected = True
    _rec(records, "prop3.5.sigma_line",
         "second-socle maps are derivations exactly on the antisymmetric line",
         True, accepted and rejected)

    records += check_socle_bound(A)
    if A.n * A.n <= ASOCA_UNKNOWN_LIMIT:
        records += check_asoca(A)
    records += check_brandt(A)
    return {"p": p, "e": e, "q": A.meta["q"], "name": A.name, "checks": records}


def scan_summary(p_max):
    """Measured structural dimensions for every grid point up to p_max."""
    rows = []
    for p, e in grid_points(p_max):
        A = make_qci(p, e)
        L = hh1(A)
        derived = L.derived_subspace()
        zlp = L.lie_center(within=derived)
        soc = L.socle_as_Z_module()
        rows.append({
            "p": p,
            "e": e,
            "q": A.meta["q"],
            "dim_hh1": int(L.dim),
            "dim_lprime": int(derived.dim),
            "dim_center_lprime": int(zlp.dim),
            "dim_socle": int(soc.dim),
            "brandt_bound": int(center(A).dim - 2),
            "socle_bound": int(soc.dim),
            "lprime_abelian": bool(L.is_abelian(derived)),
        })
    return {"p_max": p_max, "grid": rows}


def lift_report(p):
    """The integer-lift suite plus its headline quantities."""
    checks = check_lift(p)
    fp = normalized_f(p)
    cert = lifted_commutator_space(p)
    D = commutative_quotient(p)
    not_symmetric = next(r for r in checks if r["id"] == "prop6.2.iv.not_symmetric")
    return {
        "p": p,
        "f_p": [int(c) for c in fp.coefficients],
        "f_p_pretty": str(fp),
        "commutator_rank": int(cert.span.dim),
        "commutator_pure": bool(cert.pure),
        "quotient_rank": int(D.n),
        "mod_p_quotient_not_symmetric": bool(not_symmetric["computed"]),
        "checks": checks,
    }


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------


def _plain(x):
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.bool_):
        return bool(x)
    if isinstance(x, np.floating):
        return float(x)
    raise TypeError(f"not JSON-serializable: {x!r}")


def to_json(report):
    """UTF-8 JSON with sorted keys and a trailing newline; no timestamps."""
    return json.dumps(report, sort_keys=True, indent=2,
                      ensure_ascii=False, default=_plain) + "\n"


def _fmt(x):
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    return str(_plain(x) if isinstance(x, np.generic) else x)


def _checks_text(lines, checks):
    width = max(len(r["id"]) for r in checks)
    failed = 0
    for r in checks:
        status = "PASS" if r["pass"] else "FAIL"
        failed += not r["pass"]
        lines.append(f"{status} {r['id']:<{width}}  expected {_fmt(r['expected'])}"
                     f"  computed {_fmt(r['computed'])}")
        if r.get("note"):
            lines.append(f"     {'':<{width}}  note: {r['note']}")
    lines.append("")
    lines.append(f"{len(checks) - failed} passed, {failed} failed of "
                 f"{len(checks)} checks")


def to_text(report):
    """Fixed-width text rendering of any report dict."""
    lines = []
    if "checks" in report and "e" in report:
        lines.append(f"instance: {report['name']}")
        lines.append("")
        _checks_text(lines, report["checks"])
    elif "checks" in report:
        lines.append(f"lift at p = {report['p']}")
        lines.append(f"f_{report['p']} = {report['f_p_pretty']}  "
                     f"coefficients {report['f_p']}")
        lines.append(f"commutator rank {report['commutator_rank']} "
                     f"(pure: {_fmt(report['commutator_pure'])}), "
                     f"quotient rank {report['quotient_rank']}, "
                     f"mod-p quotient not symmetric: "
                     f"{_fmt(report['mod_p_quotient_not_symmetric'])}")
        lines.append("")
        _checks_text(lines, report["checks"])
    else:
        col_lp, col_zlp, col_ab = "dim L'", "dim Z(L')", "L' abelian"
        header = (f"{'p':>3} {'e':>3} {'q':>3} {'dim HH1':>8} {col_lp:>7} "
                  f"{col_zlp:>10} {'socle':>6} {'brandt<=':>9} "
                  f"{'socle<=':>8} {col_ab:>11}")
        lines.append(header)
        for row in report["grid"]:
            lines.append(
                f"{row['p']:>3} {row['e']:>3} {row['q']:>3} "
                f"{row['dim_hh1']:>8} {row['dim_lprime']:>7} "
                f"{row['dim_center_lprime']:>10} {row['dim_socle']:>6} "
                f"{row['brandt_bound']:>9} {row['socle_bound']:>8} "
                f"{_fmt(row['lprime_abelian']):>11}")
        lines.append("")
        lines.append(f"{len(report['grid'])} grid points up to p = {report['p_max']}")
    return "\n".join(lines) + "\n"
