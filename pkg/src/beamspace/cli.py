"""Command-line front end.

Parameters are ``key=value`` tokens after the subcommand, optionally read
from a file of ``key=value`` lines given as ``config=PATH`` (tokens on the
command line win).  Tables go to ``out=PATH`` (default stdout), summaries
to stderr.

Examples::

    beamspace gen-ruler p=31 extra=1
    beamspace analyze-code code=bc ng=1024
    beamspace simulate code=bc-cbs P=3 region=-0.2:0.2 trials=10000 out=pe.dat
    beamspace report-bounds T=13
    beamspace run experiment=fig2-rm-pruning outdir=data
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import beamform, chancode, golomb, sim, subcode
from .grid import SensorSet, make_grid

EXPERIMENTS = ("fig1-curves", "fig2-rm-pruning", "fig4-isotropic-pe", "fig5-cbs-pe",
               "fig6-beampattern", "bounds-report")

CODES = ("bc", "ula", "rm", "bc-cbs", "ula-cbs")

DEFAULTS = {
    "p": "31", "extra": "1", "T": "32", "ng": "1024", "na": "", "m": "5", "r": "2",
    "n": "", "P": "1", "snr": "-10:10:1", "trials": "10000", "seed": "0",
    "region": "", "workers": "1", "out": "-", "outdir": ".", "code": "bc",
    "beamformer": "", "experiment": "",
}

COMMAND_DEFAULTS = {"report-bounds": {"T": "5,7,11,13,31"}}

EXPERIMENT_DEFAULTS = {
    "fig2-rm-pruning": {"m": "4", "r": "2", "trials": "1000"},
    "fig5-cbs-pe": {"region": "-0.2:0.2", "P": "1,2,3"},
    "fig6-beampattern": {"P": "1,2,3"},
    "bounds-report": {"T": "5,7,11,13,31"},
}


class ConfigError(ValueError):
    pass


class Params(dict):
    """String parameters with typed accessors that name the offending key."""

    def int(self, key):
        try:
            return int(self[key])
        except ValueError:
            raise ConfigError(f"{key}={self[key]!r} is not an integer") from None

    def ints(self, key):
        try:
            return [int(v) for v in self[key].split(",") if v]
        except ValueError:
            raise ConfigError(f"{key}={self[key]!r} is not a list of integers") from None

    def range(self, key):
        """``lo:hi:step`` (inclusive) or a comma list of numbers."""
        raw = self[key]
        try:
            if ":" in raw:
                lo, hi, *step = (float(v) for v in raw.split(":"))
                step = step[0] if step else 1.0
                if step <= 0:
                    raise ConfigError(f"{key}: step must be positive")
                count = int(np.floor((hi - lo) / step + 1e-9)) + 1
                return tuple(lo + i * step for i in range(count))
            return tuple(float(v) for v in raw.split(","))
        except ValueError:
            raise ConfigError(f"{key}={raw!r} is not a number range") from None

    def interval(self, key):
        if not self[key]:
            return None
        vals = self.range(key)
        if ":" in self[key]:
            lo, hi = (float(v) for v in self[key].split(":")[:2])
        elif len(vals) == 2:
            lo, hi = vals
        else:
            raise ConfigError(f"{key} must be lo:hi")
        if lo > hi:
            raise ConfigError(f"{key}: lower end exceeds upper end")
        return lo, hi


def parse_params(tokens, command: str | None = None) -> Params:
    given = {}
    for tok in tokens:
        if "=" not in tok:
            raise ConfigError(f"expected key=value, got {tok!r}")
        k, v = tok.split("=", 1)
        given[k.strip()] = v.strip()
    from_file = {}
    if "config" in given:
        for line in Path(given.pop("config")).read_text().splitlines():
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"config line {line!r} is not key=value")
            k, v = line.split("=", 1)
            from_file[k.strip()] = v.strip()
    params = Params(DEFAULTS)
    merged = {**from_file, **given}
    params.update(COMMAND_DEFAULTS.get(command, {}))
    params.update(EXPERIMENT_DEFAULTS.get(merged.get("experiment", ""), {}))
    unknown = set(merged) - set(DEFAULTS)
    if unknown:
        raise ConfigError(f"unknown parameter(s): {', '.join(sorted(unknown))}")
    params.update(merged)
    return params


def fmt(x) -> str:
    return f"{x:.10g}"


def table(header, rows) -> str:
    lines = [" ".join(header)]
    for row in rows:
        lines.append(" ".join(v if isinstance(v, str) else fmt(v) for v in row))
    return "\n".join(lines) + "\n"


def emit(text: str, out: str):
    if out in ("", "-"):
        sys.stdout.write(text)
    else:
        Path(out).parent.mkdir(parents=True, exist_ok=True)
        Path(out).write_text(text)


def info(msg: str):
    print(msg, file=sys.stderr)


def bc_positions(params: Params) -> SensorSet:
    return golomb.extend_ruler(golomb.bose_chowla(params.int("p")), params.int("extra"))


def build(params: Params, kind: str | None = None, P: int | None = None):
    """Construct ``(beamformer, code)`` for the ``code=`` choice."""
    kind = kind or params["code"]
    if kind not in CODES:
        raise ConfigError(f"code={kind!r}; expected one of {', '.join(CODES)}")
    ng = params.int("ng")
    grid = make_grid(ng)
    na = params.int("na") if params["na"] else ng
    if kind == "rm":
        m, r = params.int("m"), params.int("r")
        full = chancode.reed_muller(m, r)
        if ng > full.size:
            raise ConfigError(f"ng={ng} exceeds the {full.size} codewords of RM({m},{r})")
        if na != ng:
            raise ConfigError("the BPSK construction requires na = ng")
        book = chancode.prune_deterministic(full, ng)
        W = beamform.bpsk_beamformer(chancode.to_bpsk(book), grid)
        return W, subcode.build_code(W, grid, label=f"RM({m},{r}) first {ng}")
    shifts = bc_positions(params) if kind.startswith("bc") else SensorSet.ula(params.int("T"))
    if kind in ("bc", "ula"):
        W = beamform.antenna_selection_beamformer(shifts, na)
        return W, subcode.build_code(W, grid, label=kind)
    P = P if P is not None else params.ints("P")[0]
    W = beamform.conv_beamformer(beamform.Filter.boxcar(P), shifts, na)
    return W, subcode.build_code(W, grid, allow_nulls=True, label=f"{kind} P={P}")


# -- subcommands ------------------------------------------------------------

def cmd_gen_ruler(params: Params) -> int:
    ruler = golomb.bose_chowla(params.int("p"))
    marks = golomb.extend_ruler(ruler, params.int("extra"))
    info(f"Bose-Chowla p={params['p']}: {len(ruler)} marks, Sidon mod {ruler.modulus}: "
         f"{ruler.is_sidon()}; {len(marks)} positions after extension")
    emit(table(["mark"], [[str(m)] for m in marks]), params["out"])
    return 0


def cmd_gen_rm(params: Params) -> int:
    code = chancode.reed_muller(params.int("m"), params.int("r"))
    if params["n"]:
        code = chancode.prune_deterministic(code, params.int("n"))
    stats = chancode.hamming_stats(code)
    info(f"RM({params['m']},{params['r']}): T={code.length} N={code.size} "
         f"d_min={stats.d_min} d_max={stats.d_max}")
    rows = [[str(int(code.messages[j])), "".join(map(str, code.bits[:, j]))]
            for j in range(code.size)]
    emit(table(["message", "codeword"], rows), params["out"])
    return 0


def analyze(params: Params) -> dict:
    W, code = build(params)
    dmin, (i, j) = code.min_distance()
    iso = beamform.check_isotropy(W, code.grid)
    rec = {"code": code.label, "T": code.T, "N_g": code.size, "N_a": W.n_antennas,
           "d_min": dmin, "pair": (i, j), "isotropic": iso.isotropic,
           "max_gain_deviation": iso.max_deviation}
    if code.size > code.T:
        rec["welch_bound"] = subcode.welch_upper_bound(code.T, code.size)
    if params["code"] == "rm":
        book = chancode.prune_deterministic(
            chancode.reed_muller(params.int("m"), params.int("r")), code.size)
        stats = chancode.hamming_stats(book)
        rec.update(hamming_d_min=stats.d_min, hamming_d_max=stats.d_max, rho=stats.rho,
                   closed_form_d_min=chancode.theorem2_min_subspace(stats, code.T))
    if code.null_points:
        rec["null_points"] = code.null_points
    if params["beamformer"]:
        Path(params["beamformer"]).write_text(beamform.format_matrix(W))
    return rec


def cmd_analyze_code(params: Params) -> int:
    emit(subcode.format_report(analyze(params)), params["out"])
    return 0


def simulate(params: Params, kind=None, P=None):
    _, code = build(params, kind, P)
    cfg = sim.SimConfig(code, snr_db=params.range("snr"), n_trials=params.int("trials"),
                        seed=params.int("seed"), region=params.interval("region"),
                        workers=params.int("workers"))
    curve = sim.monte_carlo(cfg)
    info(f"{code.label}: d_min={fmt(code.min_distance()[0])}")
    return curve, code


def cmd_simulate(params: Params) -> int:
    emit(simulate(params)[0].to_dat(), params["out"])
    return 0


def bounds_report(T: int, ng: int | None = None) -> tuple[dict, bool]:
    """Distance bound checks for prime T; returns the record and overall verdict."""
    if not golomb.is_prime(T):
        raise ConfigError(f"T={T} must be prime for the bound checks")
    ng = T * T - 1 if ng is None else ng
    grid = make_grid(ng)
    b = subcode.theorem3_bounds(T, ng)
    bc = subcode.antenna_space_code(golomb.bose_chowla(T).marks, grid).min_distance()[0]
    ula = subcode.antenna_space_code(SensorSet.ula(T), grid).min_distance()[0]
    ula_bound = subcode.theorem4_ula_bound()
    rec = {
        "T": T, "N_g": ng,
        "bc_lower": b.lower, "bc_upper": b.upper, "bc_d_min": bc,
        "welch_bound": subcode.welch_upper_bound(T, ng),
        "ula_bound": ula_bound, "ula_d_min": ula,
        "bc_sandwich": b.contains(bc),
        "ula_below_bound": ula <= ula_bound + 1e-9,
        "bc_lower_exceeds_ula_bound": subcode.bc_beats_ula(T),
    }
    ok = rec["bc_sandwich"] and rec["ula_below_bound"]
    return rec, ok


def cmd_report_bounds(params: Params) -> int:
    ok_all = True
    chunks = []
    for T in params.ints("T"):
        rec, ok = bounds_report(T)
        ok_all &= ok
        chunks.append(subcode.format_report(rec))
    emit("\n".join(chunks), params["out"])
    return 0 if ok_all else 1


def beampattern_table(P: int, ng: int) -> str:
    grid = make_grid(ng)
    B = beamform.beampattern(beamform.Filter.boxcar(P), grid)
    return table(["G", "B"], zip(grid.points, B))


def cmd_beampattern(params: Params) -> int:
    emit(beampattern_table(params.ints("P")[0], params.int("ng")), params["out"])
    return 0


# -- experiments ------------------------------------------------------------

def fig1(outdir: Path):
    rows_b = []
    for rho in (1.0, 0.5, 0.1):
        xs = np.linspace(0.0, rho, 101)
        ds = 1 - np.maximum(1 - 2 * xs, 2 * xs / rho - 1) ** 2
        (outdir / f"fig1a_rho{rho:g}.dat").write_text(table(["x", "dmin"], zip(xs, ds)))
    for rho in np.linspace(0.01, 1.0, 100):
        rows_b.append((rho, chancode.optimal_hamming_target(rho, 1)[1]))
    (outdir / "fig1b.dat").write_text(table(["rho", "dmin"], rows_b))


def fig2(params: Params, outdir: Path):
    code = chancode.reed_muller(params.int("m"), params.int("r"))
    T = code.length
    det = chancode.deterministic_sweep(code)
    med = chancode.prune_random_sweep(code, params.int("trials"), params.int("seed"))
    rows = [(n, det[n], med[n], subcode.welch_upper_bound(T, n))
            for n in range(T + 1, code.size + 1)]
    (outdir / "rm_pruning.dat").write_text(table(["N", "dmin", "dminmedian", "welch"], rows))
    zero_det = next(n for n, d, _, _ in rows if d == 0)
    zero_rnd = next((n for n, _, m, _ in rows if m == 0), None)
    info(f"deterministic pruning hits 0 at N_g={zero_det}; random median at N_g={zero_rnd}")


def fig4(params: Params, outdir: Path):
    dmins = {}
    for kind, name in (("rm", "pe_rm.dat"), ("bc", "pe_bc.dat")):
        curve, code = simulate(params, kind)
        (outdir / name).write_text(curve.to_dat())
        dmins[kind] = code.min_distance()[0]
    info(f"d_min: bose-chowla={dmins['bc']:.4f} reed-muller={dmins['rm']:.4f}")


def fig5(params: Params, outdir: Path):
    for P in params.ints("P"):
        curve, _ = simulate(params, "bc-cbs", P)
        (outdir / f"pe_cbs_P{P}.dat").write_text(curve.to_dat())


def fig6(params: Params, outdir: Path):
    for P in params.ints("P"):
        (outdir / f"beampattern_P{P}.dat").write_text(beampattern_table(P, params.int("ng")))


def cmd_run(params: Params) -> int:
    exp = params["experiment"]
    if exp not in EXPERIMENTS:
        raise ConfigError(f"experiment={exp!r}; expected one of {', '.join(EXPERIMENTS)}")
    outdir = Path(params["outdir"])
    outdir.mkdir(parents=True, exist_ok=True)
    if exp == "fig1-curves":
        fig1(outdir)
    elif exp == "fig2-rm-pruning":
        fig2(params, outdir)
    elif exp == "fig4-isotropic-pe":
        fig4(params, outdir)
    elif exp == "fig5-cbs-pe":
        fig5(params, outdir)
    elif exp == "fig6-beampattern":
        fig6(params, outdir)
    else:
        ok_all = True
        for T in params.ints("T"):
            rec, ok = bounds_report(T)
            ok_all &= ok
            (outdir / f"bounds_T{T}.txt").write_text(subcode.format_report(rec))
        return 0 if ok_all else 1
    return 0


COMMANDS = {
    "gen-ruler": cmd_gen_ruler,
    "gen-rm": cmd_gen_rm,
    "analyze-code": cmd_analyze_code,
    "simulate": cmd_simulate,
    "report-bounds": cmd_report_bounds,
    "beampattern": cmd_beampattern,
    "run": cmd_run,
}


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="beamspace", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("params", nargs="*", help="key=value parameters")
    args = parser.parse_args(argv)
    try:
        params = parse_params(args.params, args.command)
        return COMMANDS[args.command](params)
    except (ValueError, OSError) as exc:
        print(f"beamspace {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
