"""Command line: build codes, verify families against expectations, re-emit reports."""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass, field
from importlib import resources
from pathlib import Path

from .analysis import (
    LocalityError,
    audit_griesmer,
    audit_projective_two_weight,
    check_divisible_so_theorem,
    extract_designs,
    locality,
)
from .code_core import (
    BudgetExceeded,
    bounds_audit,
    default_budget,
    divisor,
    is_self_orthogonal,
    macwilliams,
    pless_verify,
    weight_distribution,
    write_code,
)
from .families import (
    FamilyParams,
    NoPrediction,
    ParamError,
    PredictionDefect,
    build_family,
    count_trace_values,
    CountSpec,
    predict_family,
)

EXIT_PASS, EXIT_USAGE, EXIT_MISMATCH, EXIT_SKIPPED = 0, 1, 2, 3
PARAM_FLAGS = ("p", "e", "q", "f", "m", "k", "s", "m1", "m2", "rho", "delta", "fn")


def load_expectations() -> dict:
    text = resources.files("ortholab").joinpath("data/expectations.json").read_text()
    return json.loads(text)


def _key(text: str) -> str:
    return FamilyParams.parse(text).key()


@dataclass
class VerificationReport:
    family: str
    params: dict
    status: str = "PASS"
    n: int | None = None
    k: int | None = None
    d: int | None = None
    weights: dict = field(default_factory=dict)
    divisor: int | None = None
    self_orthogonal: bool | None = None
    contains_one: bool | None = None
    dual: dict = field(default_factory=dict)
    bounds: dict = field(default_factory=dict)
    designs: list = field(default_factory=list)
    locality: dict | None = None
    audits: list = field(default_factory=list)
    prediction_case: str | None = None
    deltas: list = field(default_factory=list)
    skipped: list = field(default_factory=list)
    inconclusive: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    timing: float = 0.0

    def finish(self) -> None:
        if self.deltas:
            self.status = "MISMATCH"
        elif self.skipped:
            self.status = "SKIPPED"
        else:
            self.status = "PASS"

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "VerificationReport":
        return cls(**data)


def _delta(rep: VerificationReport, what: str, got, want) -> None:
    if got != want:
        rep.deltas.append(f"{what}: computed {got}, expected {want}")


def _classify(rep: VerificationReport, n: int, k: int, d: int, q: int, stated: str, label: str) -> None:
    b = bounds_audit(n, k, d, q)
    rep.bounds[label] = b.as_dict()
    if b.sphere_packing_class == stated:
        return
    rep.inconclusive.append(
        f"{label} [{n},{k},{d}]_{q} stated {stated}: Hamming rule gives {b.sphere_packing_class}, "
        f"Griesmer rule gives {b.griesmer_class}"
    )


def verify_params(
    params: FamilyParams,
    budget: int | None = None,
    workers: int = 1,
    errata: bool = False,
    expectations: dict | None = None,
) -> VerificationReport:
    start = time.perf_counter()
    budget = default_budget() if budget is None else budget
    expectations = load_expectations() if expectations is None else expectations
    rep = VerificationReport(params.family, params.as_dict())
    code = build_family(params)
    rep.n, rep.k = code.n, code.k
    try:
        wd = weight_distribution(code, budget, workers)
    except BudgetExceeded as exc:
        rep.skipped.append(str(exc))
        rep.timing = round(time.perf_counter() - start, 3)
        rep.finish()
        return rep
    rep.d = wd.min_distance
    rep.weights = wd.as_dict()
    rep.divisor = divisor(wd)
    rep.self_orthogonal = is_self_orthogonal(code)
    rep.contains_one = code.contains_all_one()
    dual = macwilliams(wd)
    rep.dual = dual.as_dict()
    rep.dual.pop("dual_weights")
    pless = pless_verify(wd, *dual.a_perp[:3])
    if not pless.ok:
        rep.deltas.append(f"power moment {pless.failed_moment} fails")

    # closed-form prediction
    pred = None
    try:
        pred = predict_family(params, errata=errata)
    except NoPrediction as exc:
        rep.notes.append(f"no prediction: {exc}")
    except PredictionDefect as exc:
        rep.deltas.append(f"prediction defect: {exc}")
        if exc.erratum:
            pred = predict_family(params, errata=True)
            fixed = {int(w): c for w, c in rep.weights.items()} == pred.weights
            rep.notes.append(f"erratum ({exc.erratum}) {'matches' if fixed else 'does not match'} enumeration")
    if pred is not None:
        rep.prediction_case = pred.case
        rep.notes.extend(pred.errata + pred.notes)
        _delta(rep, "n", code.n, pred.n)
        _delta(rep, "k", code.k, pred.k)
        _delta(rep, "d", wd.min_distance, pred.d)
        if pred.weights is not None:
            _delta(rep, "weights", {int(w): c for w, c in rep.weights.items()}, pred.weights)
        if pred.dual_distance is not None:
            _delta(rep, "dual distance", dual.d_perp, pred.dual_distance)
        for i, a in pred.dual_coefficients.items():
            _delta(rep, f"A_perp[{i}]", dual.dual.get(i), a)
        if pred.divisible_by is not None and rep.divisor % pred.divisible_by:
            rep.deltas.append(f"divisor {rep.divisor} not a multiple of {pred.divisible_by}")
        if pred.exact_p_power is not None:
            _delta(rep, "divisor", rep.divisor, pred.exact_p_power)
        if pred.self_orthogonal is not None:
            _delta(rep, "self_orthogonal", rep.self_orthogonal, pred.self_orthogonal)
        if pred.contains_one is not None:
            _delta(rep, "contains_one", rep.contains_one, pred.contains_one)

    # embedded expectations
    key = params.key()
    exp = next((e for e in expectations["instances"] if _key(e["params"]) == key), None)
    design_claims = []
    want_locality = pred.locality if pred is not None else None
    if pred is not None:
        design_claims = [(c.t, c.kappa, c.lam, c.in_dual) for c in pred.designs]
    if exp is not None:
        rep.notes.append(f"expectations: {exp['citation']}")
        if "nkd" in exp:
            _delta(rep, "[n,k,d]", [code.n, code.k, wd.min_distance], exp["nkd"])
        if "dual_nkd" in exp:
            _delta(rep, "dual [n,k,d]", [code.n, code.n - code.k, dual.d_perp], exp["dual_nkd"])
        if "weights" in exp:
            _delta(rep, "weights", rep.weights, exp["weights"])
        for name in ("divisor", "self_orthogonal", "contains_one"):
            if name in exp:
                _delta(rep, name, getattr(rep, name), exp[name])
        if "dual_distance" in exp:
            _delta(rep, "dual distance", dual.d_perp, exp["dual_distance"])
        for i, a in exp.get("dual_coefficients", {}).items():
            _delta(rep, f"A_perp[{i}]", dual.dual.get(int(i)), a)
        if "row_spot" in exp and pred is not None:
            spot = exp["row_spot"]
            if (spot["weight"], spot["row_frequency"]) not in pred.rows:
                rep.deltas.append(f"no table row ({spot['weight']}, {spot['row_frequency']})")
        if "locality" in exp:
            want_locality = exp["locality"]
        for dc in exp.get("designs", []):
            claim = (dc["t"], dc["kappa"], dc["lambda"], dc["in_dual"])
            if claim not in design_claims:
                design_claims.append(claim)

    for row in expectations["optimal_table"]["rows"]:
        if _key(row["params"]) != key:
            continue
        n, k, d = row["nkd"]
        if row["side"] == "code":
            _delta(rep, "table [n,k,d]", [code.n, code.k, wd.min_distance], [n, k, d])
            _classify(rep, code.n, code.k, wd.min_distance, code.q, row["class"], "code")
        else:
            _delta(rep, "table dual [n,k,d]", [code.n, code.n - code.k, dual.d_perp], [n, k, d])
            _classify(rep, code.n, code.n - code.k, dual.d_perp, code.q, row["class"], "dual")
    if "code" not in rep.bounds and wd.min_distance:
        rep.bounds["code"] = bounds_audit(code.n, code.k, wd.min_distance, code.q).as_dict()

    # audits
    for audit in (check_divisible_so_theorem, audit_projective_two_weight, audit_griesmer):
        result = audit(code, wd, budget)
        rep.audits.append(result.as_dict())
        if result.applicable and result.holds is False:
            rep.deltas.append(f"audit {result.name} fails")
    if exp is not None and "projective_two_weight" in exp:
        _delta(rep, "projective two-weight", rep.audits[1]["applicable"], exp["projective_two_weight"])
    if exp is not None and "griesmer_met" in exp:
        _delta(rep, "Griesmer met", rep.bounds["code"]["griesmer_met"], exp["griesmer_met"])

    # designs
    for t, kappa, lam, in_dual in design_claims:
        try:
            (w,) = extract_designs(code, wd, dual, [kappa], t, budget, in_dual=in_dual)
        except BudgetExceeded as exc:
            rep.skipped.append(f"design {t}-(n,{kappa}) {'dual' if in_dual else 'code'}: {exc}")
            continue
        rep.designs.append(w.as_dict())
        if not w.holds or not w.count_matches:
            rep.deltas.append(f"{t}-design at weight {kappa} ({'dual' if in_dual else 'code'}) fails")
        elif lam is not None:
            _delta(rep, f"lambda at weight {kappa}", w.lam, lam)

    # locality
    if want_locality is not None:
        try:
            wit = locality(code, r_max=want_locality, budget=budget, dual=dual, workers=workers)
            rep.locality = wit.as_dict()
            rep.locality.pop("repairs")
            _delta(rep, "locality", wit.r, want_locality)
        except LocalityError as exc:
            found = str(exc)
            try:
                wit = locality(code, r_max=want_locality + 1, budget=budget, workers=workers)
                rep.locality = {"r": wit.r, "lemma_r": None, "lemma_applies": False}
                found = f"locality {wit.r}"
            except (LocalityError, BudgetExceeded):
                pass
            rep.deltas.append(f"{found}, expected {want_locality}")
        except BudgetExceeded as exc:
            rep.skipped.append(str(exc))

    rep.timing = round(time.perf_counter() - start, 3)
    rep.finish()
    return rep


def verify_counts(expectations: dict) -> list[str]:
    """Deltas for the counting spot values."""
    out = []
    for entry in expectations.get("counts", []):
        params = FamilyParams.parse(entry["params"])
        res = count_trace_values(CountSpec(entry["lemma"], params), entry["value"])
        if res.enumerated != entry["expected"]:
            out.append(f"count {entry['lemma']} {entry['params']}: {res.enumerated} != {entry['expected']}")
        if res.agrees is False:
            out.append(f"count {entry['lemma']} {entry['params']}: closed form {res.closed_form}")
    return out


# ---------------------------------------------------------------- output


def _flat(prefix: str, value, out: list) -> None:
    if isinstance(value, dict):
        for k, v in value.items():
            _flat(f"{prefix}.{k}" if prefix else str(k), v, out)
    elif isinstance(value, list) and value and isinstance(value[0], (dict, list)):
        for i, v in enumerate(value):
            _flat(f"{prefix}.{i}", v, out)
    else:
        out.append((prefix, json.dumps(value) if isinstance(value, list) else value))


def to_tsv(doc: dict) -> str:
    rows: list = []
    _flat("", doc, rows)
    return "\n".join(f"{k}\t{v}" for k, v in rows) + "\n"


def emit(doc: dict, fmt: str, out: str | None) -> None:
    text = json.dumps(doc, indent=2) + "\n" if fmt == "json" else to_tsv(doc)
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def exit_code(reports: list[VerificationReport]) -> int:
    if any(r.status == "MISMATCH" for r in reports):
        return EXIT_MISMATCH
    if any(r.status == "SKIPPED" or r.skipped for r in reports):
        return EXIT_SKIPPED
    return EXIT_PASS


# ---------------------------------------------------------------- argument handling


def parse_budget(text: str) -> int:
    text = text.strip()
    if "^" in text:
        base, exp = text.split("^", 1)
        return int(base) ** int(exp)
    value = float(text)
    if value < 1 or value != int(value):
        raise argparse.ArgumentTypeError(f"bad budget {text!r}")
    return int(value)


def params_from_args(args) -> FamilyParams:
    raw = {"family": args.family}
    for name in PARAM_FLAGS:
        value = getattr(args, name, None)
        if value is not None:
            raw[name] = value
    if args.params:
        for token in args.params.split():
            if "=" not in token:
                raise ParamError(f"malformed parameter {token!r}")
            key, value = token.split("=", 1)
            raw[key] = value
    if raw.get("family") is None:
        raise ParamError("--family is required")
    return FamilyParams.from_mapping(raw)


def _add_common(sub) -> None:
    sub.add_argument("--family")
    sub.add_argument("--params", help='e.g. "family=c4 p=3 s=2"')
    for name in PARAM_FLAGS:
        sub.add_argument(f"--{name}", type=str if name == "fn" else int)
    sub.add_argument("--budget", type=parse_budget)
    sub.add_argument("--workers", type=int, default=1)
    sub.add_argument("--format", choices=("json", "tsv"), default="json")
    sub.add_argument("--out")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ortholab", description=__doc__)
    cmds = parser.add_subparsers(dest="command", required=True)
    b = cmds.add_parser("build", help="build a family code and write it out")
    _add_common(b)
    v = cmds.add_parser("verify", help="enumerate and compare with expectations")
    _add_common(v)
    v.add_argument("--all-desk-scale", action="store_true")
    v.add_argument("--extended", action="store_true", help="include the large tier")
    v.add_argument("--errata", action="store_true", help="apply documented table corrections")
    r = cmds.add_parser("report", help="re-emit a saved report")
    r.add_argument("path")
    r.add_argument("--format", choices=("json", "tsv"), default="json")
    r.add_argument("--out")
    return parser


def _cmd_build(args) -> int:
    params = params_from_args(args)
    code = build_family(params)
    info = {"family": params.family, "params": params.as_dict(), "n": code.n, "k": code.k, "q": code.q}
    if args.out:
        write_code(code, args.out)
        info["written"] = args.out
    emit(info, args.format, None)
    return EXIT_PASS


def _cmd_verify(args) -> int:
    expectations = load_expectations()
    if args.all_desk_scale:
        tiers = {"default", "extended"} if args.extended else {"default"}
        todo = [FamilyParams.parse(e["params"]) for e in expectations["instances"] if e["tier"] in tiers]
    else:
        todo = [params_from_args(args)]
    reports = []
    for params in todo:
        rep = verify_params(params, args.budget, args.workers, args.errata, expectations)
        reports.append(rep)
        print(f"{rep.status}\t{params.key()}\t[{rep.n},{rep.k},{rep.d}]\t{rep.timing}s", file=sys.stderr)
    if args.all_desk_scale:
        count_deltas = verify_counts(expectations)
        doc = {"reports": [r.to_dict() for r in reports], "count_deltas": count_deltas}
        code = exit_code(reports)
        if count_deltas and code == EXIT_PASS:
            code = EXIT_MISMATCH
    else:
        doc = reports[0].to_dict()
        code = exit_code(reports)
    emit(doc, args.format, args.out)
    return code


def _cmd_report(args) -> int:
    doc = json.loads(Path(args.path).read_text())
    items = doc["reports"] if "reports" in doc else [doc]
    reports = [VerificationReport.from_dict(d) for d in items]
    back = [r.to_dict() for r in reports]
    emit(doc if "reports" in doc else back[0], args.format, args.out)
    return exit_code(reports)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_PASS
    try:
        if args.command == "build":
            return _cmd_build(args)
        if args.command == "verify":
            return _cmd_verify(args)
        return _cmd_report(args)
    except (ParamError, FileNotFoundError, json.JSONDecodeError, KeyError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
