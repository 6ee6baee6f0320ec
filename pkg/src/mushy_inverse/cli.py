"""Command-line front end.

    mushy-inverse solve scenario.json
    mushy-inverse check scenario.json
    mushy-inverse profile scenario.json > profile.csv
    mushy-inverse roundtrip 13 --seed 42 --count 100

Exit codes: 0 solved (or feasible), 1 input error, 2 infeasible.
"""

from __future__ import annotations

import argparse
import dataclasses
import csv
import json
import math
import sys
from pathlib import Path
from typing import Any

from .cases import (
    CaseId,
    CaseSolution,
    Kind,
    Scenario,
    Tolerances,
    audit_restrictions,
    check_case4_sufficient,
    parse_case,
    solve_case,
)
from .errors import MushyInverseError
from .model import (
    COEFFICIENT_NAMES,
    KnownData,
    ThermalCoefficients,
    front_r,
    front_s,
    make_similarity,
    residual_eq1,
    residual_eq2,
    temperature,
)
from .oracle import verify
from .synth import construct, rng, scenario_for

EXIT_OK, EXIT_INPUT, EXIT_INFEASIBLE = 0, 1, 2

TOP_KEYS = frozenset({"case", "known", "given", "tolerances", "family_samples", "profile"})
KNOWN_KEYS = ("q0", "h0", "D_inf", "sigma")
TOLERANCE_KEYS = frozenset({"tol_x", "residual", "epsilon_margin"})
PROFILE_KEYS = frozenset({"t_list", "nx", "free_value"})
DEFAULT_FAMILY_SAMPLES = 11
RECOVERY_TARGET = 1e-9


class InputError(Exception):
    """Scenario file cannot be parsed or fails validation."""


# -- scenario files ---------------------------------------------------------

def _number(value, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise InputError(f"{where} must be a number, got {value!r}")
    return float(value)


def _check_keys(obj, allowed, where):
    if not isinstance(obj, dict):
        raise InputError(f"{where} must be an object")
    extra = sorted(set(obj) - set(allowed))
    if extra:
        raise InputError(f"unknown key(s) in {where}: {', '.join(extra)}")


def load_scenario_file(path: Path) -> dict[str, Any]:
    """Parse and validate a scenario file into plain Python objects.

    Returns a dict with ``known`` (KnownData), ``given`` (dict), ``case``
    (CaseId, or None for a fully specified consistency check),
    ``tolerances`` (Tolerances), ``family_samples`` and ``profile``.
    """
    try:
        data = json.loads(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from None
    _check_keys(data, TOP_KEYS, "scenario")
    for key in ("known", "given"):
        if key not in data:
            raise InputError(f"scenario is missing '{key}'")

    _check_keys(data["known"], KNOWN_KEYS, "known")
    missing = [k for k in KNOWN_KEYS if k not in data["known"]]
    if missing:
        raise InputError(f"known is missing {', '.join(missing)}")
    try:
        known = KnownData(**{k: _number(data["known"][k], f"known.{k}") for k in KNOWN_KEYS})
    except MushyInverseError as exc:
        raise InputError(str(exc)) from None

    _check_keys(data["given"], COEFFICIENT_NAMES, "given")
    given = {k: _number(v, f"given.{k}") for k, v in data["given"].items()}

    tol_data = data.get("tolerances", {})
    _check_keys(tol_data, TOLERANCE_KEYS, "tolerances")
    try:
        tol = Tolerances(**{k: _number(v, f"tolerances.{k}") for k, v in tol_data.items()})
    except ValueError as exc:
        raise InputError(str(exc)) from None

    samples = data.get("family_samples", DEFAULT_FAMILY_SAMPLES)
    if isinstance(samples, bool) or not isinstance(samples, int) or samples < 1:
        raise InputError(f"family_samples must be a positive integer, got {samples!r}")

    profile = data.get("profile")
    if profile is not None:
        _check_keys(profile, PROFILE_KEYS, "profile")
        t_list = profile.get("t_list")
        if not isinstance(t_list, list) or not t_list:
            raise InputError("profile.t_list must be a non-empty list")
        profile = dict(profile, t_list=[_number(t, "profile.t_list") for t in t_list])
        if any(not t > 0 for t in profile["t_list"]):
            raise InputError("profile.t_list entries must be positive")
        nx = profile.get("nx", 51)
        if isinstance(nx, bool) or not isinstance(nx, int) or nx < 2:
            raise InputError(f"profile.nx must be an integer >= 2, got {nx!r}")
        profile["nx"] = nx
        if "free_value" in profile:
            profile["free_value"] = _number(profile["free_value"], "profile.free_value")

    missing_coeffs = [n for n in COEFFICIENT_NAMES if n not in given]
    if "case" in data:
        try:
            case = parse_case(data["case"])
        except MushyInverseError as exc:
            raise InputError(str(exc)) from None
    elif not missing_coeffs:
        case = None
    elif len(missing_coeffs) == 2:
        case = parse_case(",".join(missing_coeffs))
    else:
        raise InputError("no 'case' given and the missing coefficients do not form a pair")

    try:
        if case is None:
            ThermalCoefficients(**given)
        else:
            Scenario(known, given, case)
    except MushyInverseError as exc:
        raise InputError(str(exc)) from None
    return {"known": known, "given": given, "case": case, "tolerances": tol,
            "family_samples": samples, "profile": profile}


# -- report assembly --------------------------------------------------------

def _clean(obj):
    """Make a report JSON-safe: non-finite floats become null, enums their value."""
    if isinstance(obj, float):
        return obj if math.isfinite(obj) else None
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, CaseId):
        return int(obj)
    if hasattr(obj, "value") and isinstance(obj.value, str):
        return obj.value
    return obj


def dumps(report: dict) -> str:
    # Python's float repr is already the shortest round-trip form
    return json.dumps(_clean(report), indent=2, ensure_ascii=False, allow_nan=False)


def _consistency(known: KnownData, given: dict, tol: Tolerances) -> tuple[dict, int]:
    coeffs = ThermalCoefficients(**given)
    res = {"eq1": residual_eq1(known, coeffs), "eq2": residual_eq2(known, coeffs)}
    ok = max(abs(v) for v in res.values()) <= tol.residual
    report = {"case": None, "kind": "Consistent" if ok else "Inconsistent",
              "coefficients": coeffs.as_dict(), "residuals": res, "tolerance": tol.residual}
    return report, EXIT_OK if ok else EXIT_INFEASIBLE


def solution_report(sol: CaseSolution, known: KnownData, n_samples: int = DEFAULT_FAMILY_SAMPLES) -> dict:
    out: dict[str, Any] = {
        "case": int(sol.case),
        "unknowns": list(sol.case.unknowns),
        "kind": sol.kind.value,
        "xi": sol.xi,
        "coefficients": sol.coefficients.as_dict() if sol.coefficients else None,
        "residuals": sol.residuals,
    }
    if sol.family is not None:
        fam = sol.family
        rows = []
        for value, coeffs in fam.sample(n_samples):
            row = {fam.parameter: value, **coeffs.as_dict()}
            row["residual_eq1"] = residual_eq1(known, coeffs)
            row["residual_eq2"] = residual_eq2(known, coeffs)
            rows.append(row)
        out["family"] = {"parameter": fam.parameter, "interval": list(fam.interval), "samples": rows}
    if sol.root is not None:
        out["root"] = {"iterations": sol.root.iterations, "residual": sol.root.residual,
                       "bracket_width": sol.root.bracket_width}
    out["violations"] = [v.to_dict() for v in sol.violations]
    if sol.note:
        out["note"] = sol.note
    out["report"] = sol.report.to_dict()
    return out


def _solve(loaded: dict) -> CaseSolution:
    return solve_case(Scenario(loaded["known"], loaded["given"], loaded["case"]), loaded["tolerances"])


# -- commands ---------------------------------------------------------------

def cmd_solve(path, tol: float | None = None, out=None) -> int:
    out = out or sys.stdout
    loaded = _load(path, tol)
    if loaded is None:
        return EXIT_INPUT
    if loaded["case"] is None:
        report, code = _consistency(loaded["known"], loaded["given"], loaded["tolerances"])
        print(dumps(report), file=out)
        return code
    sol = _solve(loaded)
    print(dumps(solution_report(sol, loaded["known"], loaded["family_samples"])), file=out)
    return EXIT_INFEASIBLE if sol.kind is Kind.INFEASIBLE else EXIT_OK


def cmd_check(path, tol: float | None = None, out=None) -> int:
    out = out or sys.stdout
    loaded = _load(path, tol)
    if loaded is None:
        return EXIT_INPUT
    if loaded["case"] is None:
        report, code = _consistency(loaded["known"], loaded["given"], loaded["tolerances"])
        print(dumps(report), file=out)
        return code
    scenario = Scenario(loaded["known"], loaded["given"], loaded["case"])
    report = audit_restrictions(scenario)
    body = report.to_dict()
    if scenario.case is CaseId.EPS_K:
        body["case4_sufficiency"] = check_case4_sufficient(scenario).to_dict()
    print(dumps(body), file=out)
    return EXIT_OK if report.feasible else EXIT_INFEASIBLE


def _profile_coefficients(sol: CaseSolution, profile: dict) -> ThermalCoefficients:
    if sol.coefficients is not None:
        return sol.coefficients
    fam = sol.family
    if "free_value" in profile:
        return fam.at(profile["free_value"])
    if sol.case is CaseId.EPS_L:
        # epsilon and l do not enter the temperature or either front
        return fam.at(0.5)
    raise InputError(f"case {int(sol.case)} profile needs profile.free_value for {fam.parameter}")


def cmd_profile(path, tol: float | None = None, out=None) -> int:
    """Write ``t, x, T, s_of_t, r_of_t`` rows, t-major, ``nx`` points over ``[0, s(t)]``."""
    out = out or sys.stdout
    loaded = _load(path, tol)
    if loaded is None:
        return EXIT_INPUT
    profile = loaded["profile"]
    if profile is None:
        print("error: scenario has no 'profile' block", file=sys.stderr)
        return EXIT_INPUT
    known = loaded["known"]
    if loaded["case"] is None:
        coeffs = ThermalCoefficients(**loaded["given"])
    else:
        sol = _solve(loaded)
        if sol.kind is Kind.INFEASIBLE:
            print(f"error: case {int(sol.case)} is infeasible: {', '.join(sol.violation_ids)}", file=sys.stderr)
            return EXIT_INFEASIBLE
        try:
            coeffs = _profile_coefficients(sol, profile)
        except (InputError, MushyInverseError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_INPUT
    ss = make_similarity(known, coeffs)
    nx = profile["nx"]
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["t", "x", "T", "s_of_t", "r_of_t"])
    for t in profile["t_list"]:
        s = front_s(known, t)
        r = front_r(ss, known, t)
        for i in range(nx):
            x = s if i == nx - 1 else s * i / (nx - 1)
            writer.writerow([repr(t), repr(x), repr(temperature(ss, known, x, t)), repr(s), repr(r)])
    return EXIT_OK


def _rel(a: float, b: float) -> float:
    return abs(a - b) / abs(b)


def roundtrip(case: CaseId, seed: int, count: int, samples: int = 100, check_pde: bool = True,
              tol: Tolerances | None = None) -> dict:
    """Forward-construct ``count`` scenarios, hide the case's pair, recover it.

    For family cases every sampled member must satisfy both balance equations
    and the member at the hidden true parameter must reproduce the hidden
    partner coefficient.
    """
    tol = tol or Tolerances()
    r = rng(seed)
    kinds: dict[str, int] = {}
    max_err = 0.0
    worst = None
    verified = passed = 0
    sound = 0
    for trial in range(count):
        con = construct(r)
        scenario = scenario_for(con, case)
        sol = solve_case(scenario, tol)
        kinds[sol.kind.value] = kinds.get(sol.kind.value, 0) + 1
        truth = con.coeffs.as_dict()
        if sol.kind is Kind.UNIQUE:
            got = sol.coefficients.as_dict()
            err = max(_rel(got[n], truth[n]) for n in case.unknowns)
            if worst is None or err > max_err:
                max_err, worst = err, trial
            if check_pde:
                verified += 1
                passed += verify(make_similarity(con.known, sol.coefficients), con.known, sol.coefficients).passed
        elif sol.kind is Kind.FAMILY:
            fam = sol.family
            ok = True
            for _, coeffs in fam.sample(samples):
                res = max(abs(residual_eq1(con.known, coeffs)), abs(residual_eq2(con.known, coeffs)))
                ok = ok and res <= tol.residual
            member = fam.at(truth[fam.parameter]).as_dict()
            partner = [n for n in case.unknowns if n != fam.parameter][0]
            err = _rel(member[partner], truth[partner])
            max_err = max(max_err, err)
            sound += ok and err <= RECOVERY_TARGET
        else:
            max_err = math.inf
    summary: dict[str, Any] = {"case": int(case), "unknowns": list(case.unknowns), "seed": seed, "count": count,
                               "kinds": dict(sorted(kinds.items()))}
    if case.is_family:
        summary["family_samples"] = samples
        summary["family_soundness"] = sound / count if count else 1.0
        summary["max_relative_error"] = max_err
        summary["passed"] = sound == count
    else:
        summary["unique_rate"] = kinds.get(Kind.UNIQUE.value, 0) / count if count else 1.0
        summary["max_relative_error"] = max_err
        summary["worst_trial"] = worst
        summary["verify_pass_rate"] = passed / verified if verified else None
        summary["passed"] = max_err <= RECOVERY_TARGET and summary["unique_rate"] == 1.0
    return summary


def cmd_roundtrip(case, seed: int = 0, count: int = 100, samples: int = 100, check_pde: bool = True,
                  tol: float | None = None, out=None) -> int:
    out = out or sys.stdout
    try:
        case_id = parse_case(case)
    except MushyInverseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if count < 1 or samples < 1:
        print("error: --count and --samples must be positive", file=sys.stderr)
        return EXIT_INPUT
    tols = Tolerances(residual=tol) if tol else Tolerances()
    summary = roundtrip(case_id, seed, count, samples, check_pde, tols)
    print(dumps(summary), file=out)
    return EXIT_OK if summary["passed"] else EXIT_INFEASIBLE


def _load(path, tol):
    try:
        loaded = load_scenario_file(Path(path))
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return None
    if tol is not None:
        t = loaded["tolerances"]
        loaded["tolerances"] = dataclasses.replace(t, residual=tol)
    return loaded


def _positive_float(text: str) -> float:
    value = float(text)
    if not (math.isfinite(value) and value > 0):
        raise argparse.ArgumentTypeError(f"must be a positive number, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mushy-inverse",
        description="Recover two unknown thermal coefficients of a solidifying material with a mushy zone.",
    )
    parser.add_argument("--tol", type=_positive_float, default=None,
                        help="residual tolerance for accepting a solution (default 1e-10)")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, helptext in (("solve", "solve a scenario file, print a JSON report"),
                           ("check", "audit the data restrictions of a scenario file"),
                           ("profile", "print the temperature profile as CSV")):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("file", type=Path)
    p = sub.add_parser("roundtrip", help="recover hidden coefficients from forward-constructed data")
    p.add_argument("case", help="case number 1-15 or unknown pair such as 'l,k'")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--samples", type=int, default=100, help="family members checked per trial (cases 1-3)")
    p.add_argument("--skip-verify", action="store_true", help="skip the finite-difference check")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "solve":
        return cmd_solve(args.file, args.tol)
    if args.command == "check":
        return cmd_check(args.file, args.tol)
    if args.command == "profile":
        return cmd_profile(args.file, args.tol)
    return cmd_roundtrip(args.case, args.seed, args.count, args.samples, not args.skip_verify, args.tol)


if __name__ == "__main__":
    sys.exit(main())
