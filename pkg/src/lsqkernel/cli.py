"""Command line interface: solve, refinement studies, conditioning studies.

Verbs:
    solve     one problem at the base spacing; reports error norms
    study     refinement study over levels h = base_spacing / k
    cond      conditioning study (matrix only, no solves)
    selftest  quick internal consistency battery

Configuration is a flat ``key = value`` file (# comments allowed); any
command line flag overrides the file.  Study outputs are study.csv and
study.txt, written deterministically: the same configuration produces
byte-identical files.  meta.txt carries versions and wall times and is
exempt from that guarantee.
"""

import argparse
import math
import sys
import time
from dataclasses import dataclass, fields
from pathlib import Path

import numpy as np

from . import __version__
from .assembly import (assemble_matrix, assemble_system, dump_matrix,
                       dump_vector)
from .geometry import DiskDomain, regular_disk_nodes
from .kernel import KernelSpec
from .linalg import NotPositiveDefiniteError, cholesky_solve, condition_number
from .postproc import DiscreteSolution, convergence_order, error_report
from .problem import default_problem
from .quadrature import default_rules, disk_rule, gauss_legendre

COND_WARN_THRESHOLD = 1e13

CSV_HEADER = ("tau,level,h_label,h_fill,N,l2_rms,l2_order,bdry_l2,bdry_order,"
              "residual_l2,residual_order,energy,energy_order,cond,cond_order,warn")


def format_float(x):
    """Six significant digits, scientific: the table number format."""
    return "%.5e" % x


def format_order(x):
    """Four decimals: the convergence-order format."""
    return "%.4f" % x


def theory_orders(tau, kappa, dim=2):
    """Predicted orders (l2, bdry, residual, energy), smoothness limited.

    The rate ceiling is k_lim = min(tau, kappa + dim/2): the solution
    |x|^kappa lies in H^k exactly for k < kappa + dim/2, and the trial
    space cannot beat its own smoothness tau.
    """
    k_lim = min(float(tau), float(kappa) + dim / 2.0)
    return (k_lim, k_lim - 0.5, k_lim - 2.0, k_lim - 2.0)


@dataclass(frozen=True)
class StudyConfig:
    """One study's full configuration (defaults match the model problem).

    ``regularity`` is the boundary-space index q; it never enters the
    assembled system and is kept as validated metadata (tau >= q + 2).
    ``seed`` feeds randomized fixtures built on top of a config; the
    pipeline itself is deterministic and never draws from it.
    """

    taus: tuple = (3.0,)
    epsilon: float = 10.0
    kappa: float = 4.0
    base_spacing: float = 0.25
    levels: tuple = (1, 2, 4, 6, 8)
    weight_exp: float = 3.0
    quad_scale: float = 1.0
    regularity: float = 0.0
    seed: int = 0
    out: str = "out"
    dump_system: bool = False

    def validate(self):
        """Check every field, returning one KernelSpec per tau."""
        if len(self.taus) == 0:
            raise ValueError("tau list must not be empty")
        specs = []
        for tau in self.taus:
            spec = KernelSpec(tau=tau, epsilon=self.epsilon)
            spec.require_operator_smoothness()
            if tau < self.regularity + 2.0:
                raise ValueError(
                    "tau = %g is too small for regularity q = %g; "
                    "need tau >= q + 2" % (tau, self.regularity))
            specs.append(spec)
        if not self.base_spacing > 0.0:
            raise ValueError("base_spacing must be positive")
        if not self.quad_scale > 0.0:
            raise ValueError("quad_scale must be positive")
        if not self.kappa >= 2.0:
            raise ValueError("kappa must be >= 2 (the forcing needs two derivatives)")
        if len(self.levels) == 0:
            raise ValueError("levels must not be empty")
        if any(k < 1 for k in self.levels):
            raise ValueError("levels must be positive integers")
        if list(self.levels) != sorted(set(self.levels)):
            raise ValueError("levels must be strictly increasing")
        return tuple(specs)


def _parse_levels(text):
    try:
        items = tuple(int(t) for t in str(text).replace(";", ",").split(",") if t.strip())
    except ValueError:
        raise ValueError("levels must be a comma-separated list of integers, "
                         "e.g. 1,2,4,6,8") from None
    if not items:
        raise ValueError("levels must not be empty")
    return items


def _parse_taus(text):
    try:
        items = tuple(float(t) for t in str(text).replace(";", ",").split(",") if t.strip())
    except ValueError:
        raise ValueError("tau must be a number or comma-separated list, "
                         "e.g. 3 or 3,5") from None
    if not items:
        raise ValueError("tau list must not be empty")
    # Report blocks are emitted in increasing tau order regardless of the
    # order given, so normalize here.
    return tuple(sorted(set(items)))


def _parse_bool(text):
    value = str(text).strip().lower()
    if value in ("1", "true", "yes", "on"):
        return True
    if value in ("0", "false", "no", "off"):
        return False
    raise ValueError("expected a boolean (true/false), got %r" % text)


_CONFIG_PARSERS = {
    "tau": _parse_taus,
    "epsilon": float,
    "kappa": float,
    "base_spacing": float,
    "levels": _parse_levels,
    "weight_exp": float,
    "quad_scale": float,
    "regularity": float,
    "seed": int,
    "out": str,
    "dump_system": _parse_bool,
}


def parse_config_file(path):
    """Read a flat ``key = value`` file into a typed dict."""
    values = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if not sep or not key:
            raise ValueError("%s:%d: expected 'key = value', got %r"
                             % (path, lineno, raw))
        if key not in _CONFIG_PARSERS:
            raise ValueError(
                "%s:%d: unknown key %r; valid keys: %s"
                % (path, lineno, key, ", ".join(sorted(_CONFIG_PARSERS))))
        try:
            values[key] = _CONFIG_PARSERS[key](value)
        except ValueError as err:
            raise ValueError("%s:%d: bad value for %s: %s"
                             % (path, lineno, key, err)) from None
    return values


def build_config(args):
    """Defaults, then the config file, then explicit command line flags."""
    values = {}
    if args.config is not None:
        values.update(parse_config_file(args.config))
    if "tau" in values:
        values["taus"] = values.pop("tau")
    overrides = {
        "taus": _parse_taus(args.tau) if args.tau is not None else None,
        "epsilon": args.epsilon,
        "kappa": args.kappa,
        "base_spacing": args.base_spacing,
        "levels": _parse_levels(args.levels) if args.levels is not None else None,
        "weight_exp": args.weight_exp,
        "quad_scale": args.quad_scale,
        "out": args.out,
    }
    for key, value in overrides.items():
        if value is not None:
            values[key] = value
    if getattr(args, "dump_system", False):
        values["dump_system"] = True
    return StudyConfig(**values)


@dataclass
class LevelResult:
    """Everything one (tau, level) pair produced (None where not computed)."""

    tau: float
    level: int
    h_label: float
    h_fill: float
    node_count: int
    report: object = None
    solve_residual: float = None
    cond: float = None
    warns: tuple = ()
    wall_seconds: float = 0.0


def run_level(cfg, spec, domain, problem, level,
              want_errors=True, want_cond=True, dump_dir=None):
    """Assemble, optionally solve and estimate conditioning, at one level."""
    t0 = time.time()
    spacing = cfg.base_spacing / level
    nodes = regular_disk_nodes(domain, spacing)
    q_in, q_bd = default_rules(domain, spacing, scale=cfg.quad_scale)
    warns = []
    report = None
    solve_residual = None
    if want_errors:
        system = assemble_system(spec, problem, nodes, q_in, q_bd,
                                 weight_exponent=cfg.weight_exp)
        matrix = system.matrix
        if dump_dir is not None:
            dump_matrix(Path(dump_dir) / "A.mat", matrix)
            dump_vector(Path(dump_dir) / "b.vec", system.rhs)
        try:
            solution = cholesky_solve(matrix, system.rhs)
        except NotPositiveDefiniteError:
            warns.append("solve-failed")
        else:
            solve_residual = solution.relative_residual
            if solution.warning is not None:
                warns.append("resid-above-target")
            discrete = DiscreteSolution(spec, nodes, solution.coefficients)
            report = error_report(discrete, problem, domain, q_in, q_bd,
                                  weight_exponent=cfg.weight_exp,
                                  h_label=spacing)
    else:
        system = assemble_matrix(spec, problem.operator, nodes, q_in, q_bd,
                                 weight_exponent=cfg.weight_exp)
        matrix = system.matrix
    cond = None
    if want_cond:
        estimate = condition_number(matrix)
        if math.isfinite(estimate.cond):
            cond = estimate.cond
            if not estimate.converged:
                warns.append("cond-approx")
            if cond > COND_WARN_THRESHOLD:
                warns.append("cond>1e13")
        else:
            warns.append("cond-failed")
    return LevelResult(
        tau=spec.tau, level=level, h_label=spacing, h_fill=nodes.h_fill,
        node_count=nodes.count, report=report, solve_residual=solve_residual,
        cond=cond, warns=tuple(warns), wall_seconds=time.time() - t0)


_ERROR_FIELDS = ("l2_rms", "bdry_l2", "residual_l2", "energy")


def build_rows(results):
    """CSV cell rows with orders between consecutive valid levels.

    Order columns restart at each tau block: the first row of a block
    never carries orders, and failed rows neither receive orders nor
    serve as the reference for the next level's order.
    """
    rows = []
    prev_tau = None
    for res in results:
        if res.tau != prev_tau:
            prev_err = {name: None for name in _ERROR_FIELDS}
            prev_cond = None
            prev_tau = res.tau
        cells = [
            "%g" % res.tau,
            "%d" % res.level,
            format_float(res.h_label),
            format_float(res.h_fill),
            "%d" % res.node_count,
        ]
        for name in _ERROR_FIELDS:
            if res.report is None:
                cells.extend(["", ""])
                continue
            value = getattr(res.report, name)
            cells.append(format_float(value))
            prev = prev_err[name]
            if prev is None:
                cells.append("")
            else:
                order = convergence_order(prev[0], value, prev[1], res.h_label)
                cells.append(format_order(order) if math.isfinite(order) else "")
            prev_err[name] = (value, res.h_label)
        if res.cond is None:
            cells.extend(["", ""])
        else:
            cells.append(format_float(res.cond))
            if prev_cond is None:
                cells.append("")
            else:
                order = convergence_order(prev_cond[0], res.cond,
                                          prev_cond[1], res.h_label)
                cells.append(format_order(order) if math.isfinite(order) else "")
            prev_cond = (res.cond, res.h_label)
        cells.append(";".join(res.warns))
        rows.append(cells)
    return rows


def write_csv(path, rows):
    lines = [CSV_HEADER]
    lines.extend(",".join(cells) for cells in rows)
    Path(path).write_text("\n".join(lines) + "\n")


def cond_fit_slope(h_fills, conds):
    """Least-squares slope of log(cond) against log(h_fill)."""
    h = np.asarray(h_fills, dtype=np.float64)
    c = np.asarray(conds, dtype=np.float64)
    if h.size < 2:
        return float("nan")
    return float(np.polyfit(np.log(h), np.log(c), 1)[0])


def write_meta(path, cfg, results, total_seconds, extra=()):
    lines = ["# run metadata (not covered by the determinism guarantee)",
             "version = %s" % __version__,
             "python = %s" % sys.version.split()[0],
             "numpy = %s" % np.__version__]
    try:
        import scipy
        lines.append("scipy = %s" % scipy.__version__)
    except ImportError:
        pass
    lines.append("")
    for f in fields(cfg):
        value = getattr(cfg, f.name)
        if f.name in ("levels", "taus"):
            value = ",".join("%g" % k for k in value)
        lines.append("%s = %s" % (f.name, value))
    lines.append("")
    for res in results:
        lines.append("tau %g level %d: N=%d wall=%.2fs" %
                     (res.tau, res.level, res.node_count, res.wall_seconds))
    lines.extend(extra)
    lines.append("total wall = %.2fs" % total_seconds)
    Path(path).write_text("\n".join(lines) + "\n")


def _prepare(cfg):
    specs = cfg.validate()
    out_dir = Path(cfg.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    return specs, DiskDomain(), default_problem(cfg.kappa), out_dir


def _run_blocks(cfg, specs, domain, problem, want_errors, stdout):
    """Per-tau, per-level driver loop shared by study and cond."""
    results = []
    for spec in specs:
        for level in cfg.levels:
            res = run_level(cfg, spec, domain, problem, level,
                            want_errors=want_errors, want_cond=True)
            results.append(res)
            line = "tau %g level %d: N=%d h_fill=%.4e" % (
                res.tau, res.level, res.node_count, res.h_fill)
            if res.report is not None:
                line += " l2_rms=%.4e" % res.report.l2_rms
            if res.cond is not None:
                line += " cond=%.4e" % res.cond
            if res.warns:
                line += " [%s]" % ";".join(res.warns)
            print(line, file=stdout)
    return results


def _write_table_with_fit(path, cfg, rows, results):
    header = CSV_HEADER.split(",")
    widths = [max(len(header[i]), max((len(r[i]) for r in rows), default=0))
              for i in range(len(header))]
    lines = ["  ".join(h.rjust(widths[i]) for i, h in enumerate(header))]
    for cells in rows:
        lines.append("  ".join(c.rjust(widths[i]) for i, c in enumerate(cells)))
    for tau in cfg.taus:
        block = [r for r in results if r.tau == tau]
        pairs = [(r.h_fill, r.cond) for r in block if r.cond is not None]
        if len(pairs) >= 2:
            slope = cond_fit_slope([p[0] for p in pairs], [p[1] for p in pairs])
            lines.append("")
            lines.append(
                "tau %g: log-log slope of cond vs h_fill: %s (kernel theory: %g)"
                % (tau, format_order(slope), -4.0 * tau))
        if tau >= 5.0:
            t_l2, t_bd, t_res, t_en = theory_orders(tau, cfg.kappa)
            lines.append("")
            lines.append("tau %g expected orders (smoothness limited): "
                         "l2=%g bdry=%g residual=%g energy=%g"
                         % (tau, t_l2, t_bd, t_res, t_en))
    Path(path).write_text("\n".join(lines) + "\n")


def cmd_study(cfg, stdout):
    specs, domain, problem, out_dir = _prepare(cfg)
    t0 = time.time()
    results = _run_blocks(cfg, specs, domain, problem, True, stdout)
    rows = build_rows(results)
    write_csv(out_dir / "study.csv", rows)
    _write_table_with_fit(out_dir / "study.txt", cfg, rows, results)
    write_meta(out_dir / "meta.txt", cfg, results, time.time() - t0)
    print("wrote %s" % (out_dir / "study.csv"), file=stdout)
    return 0


def cmd_cond(cfg, stdout):
    specs, domain, problem, out_dir = _prepare(cfg)
    t0 = time.time()
    results = _run_blocks(cfg, specs, domain, problem, False, stdout)
    rows = build_rows(results)
    write_csv(out_dir / "study.csv", rows)
    _write_table_with_fit(out_dir / "study.txt", cfg, rows, results)
    write_meta(out_dir / "meta.txt", cfg, results, time.time() - t0)
    print("wrote %s" % (out_dir / "study.csv"), file=stdout)
    return 0


def cmd_solve(cfg, stdout):
    specs, domain, problem, out_dir = _prepare(cfg)
    if len(specs) != 1:
        raise ValueError("solve runs a single kernel; give one tau, got %s"
                         % (",".join("%g" % t for t in cfg.taus)))
    spec = specs[0]
    t0 = time.time()
    spacing = cfg.base_spacing
    nodes = regular_disk_nodes(domain, spacing)
    q_in, q_bd = default_rules(domain, spacing, scale=cfg.quad_scale)
    system = assemble_system(spec, problem, nodes, q_in, q_bd,
                             weight_exponent=cfg.weight_exp)
    if cfg.dump_system:
        dump_matrix(out_dir / "A.mat", system.matrix)
        dump_vector(out_dir / "b.vec", system.rhs)
    solution = cholesky_solve(system.matrix, system.rhs)
    discrete = DiscreteSolution(spec, nodes, solution.coefficients)
    report = error_report(discrete, problem, domain, q_in, q_bd,
                          weight_exponent=cfg.weight_exp, h_label=spacing)
    with open(out_dir / "solution.csv", "w") as fh:
        fh.write("x,y,coefficient\n")
        for (x, y), c in zip(nodes.points, solution.coefficients):
            fh.write("%.16e,%.16e,%.16e\n" % (x, y, c))
    lines = [
        "tau = %g  epsilon = %g  kappa = %g" % (spec.tau, cfg.epsilon, cfg.kappa),
        "spacing = %s  N = %d" % (format_float(spacing), nodes.count),
        "h_fill = %s  q_sep = %s" % (format_float(nodes.h_fill),
                                     format_float(nodes.q_sep)),
        "l2_rms = %s" % format_float(report.l2_rms),
        "bdry_l2 = %s" % format_float(report.bdry_l2),
        "residual_l2 = %s" % format_float(report.residual_l2),
        "energy = %s" % format_float(report.energy),
        "solve relative residual = %.3e (refinements %d)"
        % (solution.relative_residual, solution.refinements),
    ]
    if solution.warning is not None:
        lines.append("warning: %s" % solution.warning)
    (out_dir / "report.txt").write_text("\n".join(lines) + "\n")
    res = LevelResult(tau=spec.tau, level=1, h_label=spacing,
                      h_fill=nodes.h_fill, node_count=nodes.count,
                      wall_seconds=time.time() - t0)
    write_meta(out_dir / "meta.txt", cfg, [res], time.time() - t0)
    print("N=%d l2_rms=%s -> %s" % (nodes.count, format_float(report.l2_rms),
                                    out_dir / "report.txt"), file=stdout)
    return 0


def cmd_selftest(cfg, stdout):
    """Fast internal consistency battery; one PASS/FAIL line per check."""
    checks = []

    def check(name, fn):
        try:
            fn()
            checks.append((name, True, ""))
        except AssertionError as err:
            checks.append((name, False, str(err)))

    def bessel_spot():
        from .specfun import bessel_k
        exact = math.sqrt(math.pi / 2.0) * math.exp(-1.0)
        got = bessel_k(0.5, 1.0)
        assert abs(got - exact) <= 1e-12 * exact, "K_{1/2}(1) off: %r" % got

    def gauss_nodes():
        x, w = gauss_legendre(2)
        assert np.allclose(x, [-1 / math.sqrt(3), 1 / math.sqrt(3)],
                           rtol=0, atol=1e-14), "2-point nodes off"
        assert np.allclose(w, [1.0, 1.0], rtol=0, atol=1e-14), "2-point weights off"

    def disk_moment():
        rule = disk_rule(DiskDomain(), 20, 40)
        got = rule.integrate(np.sum(rule.points ** 2, axis=1))
        assert abs(got - math.pi / 2.0) <= 1e-12, "disk moment off: %r" % got

    def trial_recovery():
        from .problem import trial_function_problem
        domain = DiskDomain()
        spec = KernelSpec(tau=4.0, epsilon=10.0)
        nodes = regular_disk_nodes(domain, 0.25)
        rng = np.random.default_rng(11)
        coeffs = rng.standard_normal(nodes.count)
        prob = trial_function_problem(spec, nodes.points, coeffs)
        q_in, q_bd = default_rules(domain, nodes.spacing)
        system = assemble_system(spec, prob, nodes, q_in, q_bd)
        sol = cholesky_solve(system.matrix, system.rhs)
        err = (np.max(np.abs(sol.coefficients - coeffs))
               / np.max(np.abs(coeffs)))
        assert err <= 1e-8, "trial-space recovery error %.2e" % err

    def interpolation_collocates():
        from .postproc import interpolate
        domain = DiskDomain()
        spec = KernelSpec(tau=3.0, epsilon=10.0)
        nodes = regular_disk_nodes(domain, 0.25)
        target = lambda p: np.sin(p[:, 0]) + p[:, 1] ** 2
        interp = interpolate(spec, nodes, target)
        err = np.max(np.abs(interp.values(nodes.points)
                            - target(nodes.points)))
        assert err <= 1e-8, "interpolation mismatch %.2e" % err

    check("bessel-half-integer", bessel_spot)
    check("gauss-legendre-2pt", gauss_nodes)
    check("disk-rule-moment", disk_moment)
    check("trial-space-recovery", trial_recovery)
    check("interpolation-collocation", interpolation_collocates)
    failed = 0
    for name, ok, detail in checks:
        tag = "PASS" if ok else "FAIL"
        suffix = (" (%s)" % detail) if detail else ""
        print("%s %s%s" % (tag, name, suffix), file=stdout)
        failed += 0 if ok else 1
    print("%d/%d checks passed" % (len(checks) - failed, len(checks)),
          file=stdout)
    return 0 if failed == 0 else 1


def build_parser():
    parser = argparse.ArgumentParser(
        prog="lsqkernel",
        description="Weighted least-squares kernel solver on the unit disk")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
            ("solve", "solve once at the base spacing"),
            ("study", "refinement study with error norms and conditioning"),
            ("cond", "conditioning study (no solves)"),
            ("selftest", "quick internal consistency battery")):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", help="flat key = value configuration file")
        p.add_argument("--out", help="output directory (default: out)")
        p.add_argument("--tau", help="kernel smoothness exponent, or a "
                                     "comma-separated list for multi-block studies")
        p.add_argument("--epsilon", type=float, help="kernel shape parameter")
        p.add_argument("--kappa", type=float,
                       help="exact solution |x|^kappa exponent")
        p.add_argument("--base-spacing", type=float, dest="base_spacing",
                       help="coarsest lattice spacing")
        p.add_argument("--levels", help="comma-separated divisors k, h = base/k")
        p.add_argument("--weight-exp", type=float, dest="weight_exp",
                       help="boundary weight exponent p in w = h^-p")
        p.add_argument("--quad-scale", type=float, dest="quad_scale",
                       help="multiplier on the default quadrature resolution")
        p.add_argument("--dump-system", action="store_true", dest="dump_system",
                       help="write A.mat and b.vec (solve only)")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        cfg = build_config(args)
        handler = {"solve": cmd_solve, "study": cmd_study,
                   "cond": cmd_cond, "selftest": cmd_selftest}[args.command]
        code = handler(cfg, sys.stdout)
    except (ValueError, OSError) as err:
        print("error: %s" % err, file=sys.stderr)
        return 2
    return code


if __name__ == "__main__":
    sys.exit(main())
