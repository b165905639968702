"""Command-line harness: reproducible seeded experiment runs emitting CSV,
JSON and figures, plus the verification suite runner.

Exit codes: 0 success, 2 config error, 3 budget exhausted, 4 invariant
failure (verify only).
"""

import argparse
import math
import os
import sys
from dataclasses import dataclass, asdict, fields

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_BUDGET = 3
EXIT_INVARIANT = 4


def _apply_thread_cap():
    cap = os.environ.get("SUMLAB_THREADS")
    if cap:
        for var in ("OPENBLAS_NUM_THREADS", "OMP_NUM_THREADS",
                    "MKL_NUM_THREADS"):
            os.environ.setdefault(var, cap)


_apply_thread_cap()


@dataclass
class RunConfig:
    n: int = 2
    r: float = 0.4
    seed: int = 7
    nmax: int = 1024
    grid: int = 2000
    trunc: int = 40
    stages: int = 3
    out: str = "."

    def validate(self):
        if not 2 <= self.n <= 4:
            raise ValueError("n must be between 2 and 4")
        if not 0.0 < self.r <= math.pi:
            raise ValueError("r must lie in (0, pi]")
        if not 1 <= self.nmax <= 2 ** 16:
            raise ValueError("nmax must be in [1, 65536]")
        if not 1 <= self.grid <= 10 ** 5:
            raise ValueError("grid must be in [1, 100000]")
        if not 1 <= self.trunc <= 4096:
            raise ValueError("trunc must be in [1, 4096]")
        if not 1 <= self.stages <= 4:
            raise ValueError("stages must be in [1, 4]")

    def items(self):
        # the output directory is a location, not an experiment parameter,
        # so it stays out of the reproducibility hash
        return sorted((k, v) for k, v in asdict(self).items() if k != "out")


def load_config_file(path):
    out = {}
    with open(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key = value")
            key, _, val = line.partition("=")
            out[key.strip()] = val.strip()
    return out


def build_config(args):
    cfg = RunConfig()
    if args.config:
        raw = load_config_file(args.config)
        valid = {f.name: f.type for f in fields(RunConfig)}
        for key, val in raw.items():
            if key not in valid:
                raise ValueError(f"unknown config key {key!r}")
            typ = type(getattr(cfg, key))
            setattr(cfg, key, typ(val))
    for key in ("n", "r", "seed", "nmax", "grid", "trunc", "stages", "out"):
        val = getattr(args, key, None)
        if val is not None:
            setattr(cfg, key, val)
    cfg.validate()
    return cfg


def cmd_verify(cfg):
    from .verify import run_all
    results = run_all()
    from .reports import meta_line, write_csv
    rows = []
    for res in results:
        status = "PASS" if res.passed else "FAIL"
        print(f"{status} {res.name} [{res.seconds:.1f}s] {res.detail}")
        rows.append((res.name.split()[0], status, f"{res.seconds:.2f}",
                     res.detail.replace(",", ";")))
    out = os.path.join(cfg.out, "verify_report.csv")
    write_csv(out, meta_line(cfg.items(), cfg.seed),
              ("criterion", "status", "seconds", "detail"), rows)
    print(f"wrote {out}")
    return EXIT_OK if all(r.passed for r in results) else EXIT_INVARIANT


def cmd_kernel(cfg):
    import numpy as np
    from .kernels import decompose
    from .reports import kernel_figure, meta_line, write_csv
    thetas = np.linspace(0.05, math.pi - 0.05, min(cfg.grid, 256))
    Ns = [1]
    while Ns[-1] * 2 <= cfg.nmax:
        Ns.append(Ns[-1] * 2)
    from .kernels import cesaro_kernel
    from .specfun import delta0
    rows = []
    last_profiles = {"K_full": [], "K_main": [], "K_error": [],
                     "K_antipodal": []}
    for N in Ns:
        for th in thetas:
            d = decompose(cfg.n, N, float(th), trunc=cfg.trunc)
            full = cesaro_kernel(cfg.n, delta0(cfg.n), N, float(th))
            rows.append((N, th, full, d.main, d.error, d.antipodal,
                         d.tail_bound))
            if N == Ns[-1]:
                last_profiles["K_full"].append(full)
                last_profiles["K_main"].append(d.main)
                last_profiles["K_error"].append(d.error)
                last_profiles["K_antipodal"].append(d.antipodal)
    out = os.path.join(cfg.out, "kernel.csv")
    write_csv(out, meta_line(cfg.items(), cfg.seed),
              ("N", "theta", "K_full", "K_main", "K_error", "K_antipodal",
               "trunc_bound"), rows)
    kernel_figure(os.path.join(cfg.out, "kernel.png"), thetas,
                  last_profiles, Ns[-1])
    print(f"wrote {out} (+.png)")
    return EXIT_OK


def cmd_pack(cfg):
    from .reports import meta_line, packing_figure
    from .sphere import greedy_packing, save_packing_csv
    mu = greedy_packing(cfg.n, cfg.r, cfg.seed)
    out = os.path.join(cfg.out, "packing.csv")
    save_packing_csv(mu, out,
                     extra_header=(meta_line(cfg.items(), cfg.seed),))
    packing_figure(os.path.join(cfg.out, "packing.png"), mu)
    print(f"wrote {out} (+.png): m={mu.size}")
    return EXIT_OK


def cmd_scan(cfg):
    import numpy as np
    from .divergence import scan_grid
    from .reports import meta_line, scan_figure, write_csv
    from .sphere import greedy_packing, remove_antipodal_pairs, sphere_grid
    mu = greedy_packing(cfg.n, cfg.r, cfg.seed)
    mu = remove_antipodal_pairs(mu, min(1e-3, cfg.r / 8.0))
    grid = sphere_grid(cfg.n, cfg.grid, cfg.seed)
    gs = scan_grid(mu, grid, cfg.nmax, cfg.n)
    rows = []
    for i in range(grid.shape[0]):
        rows.append((i, *grid[i], gs.sup_abs[i], gs.argmax_N[i],
                     gs.target[i], cfg.r, mu.size, cfg.nmax, cfg.seed))
    coord_cols = tuple(f"x{j}" for j in range(cfg.n + 1))
    out = os.path.join(cfg.out, "scan.csv")
    write_csv(out, meta_line(cfg.items(), cfg.seed),
              ("point_index", *coord_cols, "sup_abs", "argmax_N", "target",
               "r", "m", "N_max", "seed"), rows)
    scan_figure(os.path.join(cfg.out, "scan.png"), gs)
    med = float(np.median(gs.sup_abs))
    print(f"wrote {out} (+.png): median sup={med:.4f}")
    return EXIT_OK


def cmd_summability(cfg):
    import numpy as np
    from .divergence import proj_table
    from .reports import meta_line, summability_figure, write_csv
    from .specfun import delta0
    from .sphere import greedy_packing, sphere_grid
    from .summation import SummationSpec, apply
    mu = greedy_packing(cfg.n, cfg.r, cfg.seed)
    x = sphere_grid(cfg.n, 1, cfg.seed)
    kmax = min(cfg.nmax, 512)
    a = proj_table(mu, x, kmax)[0]
    d0 = delta0(cfg.n)
    cshift = (cfg.n - 1) / 2.0
    cutoffs = []
    c = 4
    while c <= cfg.nmax:
        cutoffs.append(c)
        c *= 2
    rows = []
    for cutoff in cutoffs:
        R = cutoff + 0.31
        rows.append(("Cesaro", d0, 0.0, cutoff,
                     apply(SummationSpec("Cesaro", d0, cutoff), a)))
        rows.append(("Riesz", d0, 0.0, R,
                     apply(SummationSpec("Riesz", d0, R), a)))
        rows.append(("ShiftedRiesz", d0, cshift, R,
                     apply(SummationSpec("ShiftedRiesz", d0, R, c=cshift), a)))
        rows.append(("QuadraticRiesz", d0, cshift, R,
                     apply(SummationSpec("QuadraticRiesz", d0, R, c=cshift), a)))
        rows.append(("BochnerRiesz", d0, 0.0, R,
                     apply(SummationSpec("BochnerRiesz", d0, R, n=cfg.n), a)))
    out = os.path.join(cfg.out, "summability.csv")
    write_csv(out, meta_line(cfg.items(), cfg.seed),
              ("method", "delta", "c", "cutoff", "value"),
              rows)
    summability_figure(os.path.join(cfg.out, "summability.png"), rows)
    print(f"wrote {out} (+.png)")
    return EXIT_OK


def cmd_stage(cfg):
    from dataclasses import asdict as dc_asdict
    from .divergence import build_staged
    from .reports import meta_line, stage_figure, write_json
    sf = build_staged(cfg.n, cfg.stages, cfg.grid, cfg.seed)
    payload = {"stages": [dc_asdict(rec) for rec in sf.records],
               "completed": sf.completed}
    out = os.path.join(cfg.out, "stage.json")
    write_json(out, meta_line(cfg.items(), cfg.seed), payload)
    stage_figure(os.path.join(cfg.out, "stage.png"), sf.records)
    print(f"wrote {out} (+.png): completed={sf.completed}")
    if any(rec.budget_exhausted for rec in sf.records):
        print("budget exhausted before some stage met its fraction target",
              file=sys.stderr)
        return EXIT_BUDGET
    return EXIT_OK


COMMANDS = {
    "verify": cmd_verify,
    "kernel": cmd_kernel,
    "pack": cmd_pack,
    "scan": cmd_scan,
    "summability": cmd_summability,
    "stage": cmd_stage,
}


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="sumlab",
        description="critical-index summability laboratory")
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("--config", default=None)
    parser.add_argument("--n", type=int, default=None)
    parser.add_argument("--r", type=float, default=None)
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--nmax", type=int, default=None)
    parser.add_argument("--grid", type=int, default=None)
    parser.add_argument("--trunc", type=int, default=None)
    parser.add_argument("--stages", type=int, default=None)
    parser.add_argument("--out", default=None)
    args = parser.parse_args(argv)
    try:
        cfg = build_config(args)
    except (ValueError, OSError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    os.makedirs(cfg.out, exist_ok=True)
    return COMMANDS[args.command](cfg)


if __name__ == "__main__":
    sys.exit(main())
