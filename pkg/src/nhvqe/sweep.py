"""Parameter sweeps over field strength and system size, with CSV and SVG output.

A sweep evaluates every (n, gamma, method) grid point independently; each point
derives a private seed from (master_seed, point index), so results are
deterministic and identical for any worker count. Rows are kept sorted by
(n, gamma, method).
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from . import model
from .ansatz import build_ansatz, default_depth
from .errors import DimensionError
from .exact import DENSE_LIMIT, diagonalize, ground_pair, observable, susceptibility
from .solver import SolverConfig, solve
from .statevector import NoiseConfig, derive_seed, expectation

VQE = "vqe"
EXACT = "exact"
BOTH = "both"
METHODS = (VQE, EXACT, BOTH)

#: Default cap on VQE system size (exact sweeps go up to the dense limit).
VQE_CAP = 5

CSV_HEADER = "model,n,gamma,method,energy_re,energy_im,mx,chi_x,final_cost,seed"


@dataclass(frozen=True)
class SweepConfig:
    model: str
    n_list: tuple[int, ...]
    gamma_start: float
    gamma_end: float
    gamma_steps: int
    method: str = EXACT
    solver: SolverConfig = field(default_factory=SolverConfig)
    noise: NoiseConfig = field(default_factory=lambda: NoiseConfig(epsilon=0.0))
    depth: int | None = None
    vqe_cap: int = VQE_CAP
    workers: int = 1
    master_seed: int = 0
    output_path: str | None = None
    plot: bool = False

    def validate(self) -> None:
        if self.model not in model.MODEL_KINDS:
            raise ValueError(f"unknown model {self.model!r}")
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}")
        if self.gamma_steps < 2:
            raise ValueError("gamma_steps must be >= 2")
        if not self.gamma_start < self.gamma_end:
            raise ValueError("gamma_start must be < gamma_end")
        if not self.n_list:
            raise ValueError("n_list must be nonempty")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        for n in self.n_list:
            if n < 2:
                raise ValueError(f"chain needs at least 2 sites, got {n}")
            if n > DENSE_LIMIT and self.method in (EXACT, BOTH):
                raise ValueError(f"n = {n} exceeds the exact-diagonalization cap {DENSE_LIMIT}")
            if n > self.vqe_cap and self.method in (VQE, BOTH):
                raise ValueError(f"n = {n} exceeds the VQE cap {self.vqe_cap}")


@dataclass(frozen=True)
class SweepRow:
    model: str
    n: int
    gamma: float
    method: str
    energy_re: float
    energy_im: float
    mx: float
    chi_x: float
    final_cost: float
    seed: int


@dataclass(frozen=True)
class SweepResult:
    rows: tuple[SweepRow, ...]

    def __len__(self) -> int:
        return len(self.rows)

    def subset(self, method: str | None = None, n: int | None = None) -> "SweepResult":
        rows = [
            r for r in self.rows
            if (method is None or r.method == method) and (n is None or r.n == n)
        ]
        return SweepResult(tuple(rows))

    def gammas(self) -> np.ndarray:
        return np.array(sorted({r.gamma for r in self.rows}))


def _point_methods(method: str) -> tuple[str, ...]:
    return (EXACT, VQE) if method == BOTH else (method,)


def _run_point(config: SweepConfig, index: int, n: int, gamma: float,
               method: str) -> SweepRow:
    seed = derive_seed(config.master_seed, index)
    h = model.build_hamiltonian(config.model, n, gamma)
    mx = model.build_mx(n)
    if method == EXACT:
        pair = ground_pair(diagonalize(h))
        return SweepRow(
            model=config.model, n=n, gamma=gamma, method=method,
            energy_re=pair.value.real, energy_im=pair.value.imag,
            mx=observable(pair, mx).real,
            chi_x=susceptibility(pair, mx),
            final_cost=pair.residual, seed=seed,
        )
    circuit = build_ansatz(n, config.depth if config.depth is not None else default_depth(n))
    solver_config = replace(
        config.solver,
        noise=NoiseConfig(config.noise.epsilon, derive_seed(seed, 0)),
        init_seed=derive_seed(seed, 1),
    )
    result = solve(h, circuit, solver_config)
    meas_noise = NoiseConfig(config.noise.epsilon, derive_seed(seed, 2))
    state = result.ground.state
    mx_val = expectation(state, mx, meas_noise).real
    mx2_val = expectation(state, mx * mx, meas_noise).real
    return SweepRow(
        model=config.model, n=n, gamma=gamma, method=method,
        energy_re=result.ground.energy.real, energy_im=result.ground.energy.imag,
        mx=mx_val, chi_x=mx2_val - mx_val**2,
        final_cost=result.ground.final_cost, seed=seed,
    )


def run_sweep(config: SweepConfig) -> SweepResult:
    """Evaluate every grid point; per-point failures to converge land in final_cost."""
    config.validate()
    gammas = np.linspace(config.gamma_start, config.gamma_end, config.gamma_steps)
    jobs = [
        (n, float(g), m)
        for n in sorted(config.n_list)
        for g in gammas
        for m in sorted(_point_methods(config.method))
    ]
    if config.workers == 1:
        rows = [_run_point(config, i, *job) for i, job in enumerate(jobs)]
    else:
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            rows = list(pool.map(
                lambda pair: _run_point(config, pair[0], *pair[1]),
                enumerate(jobs),
            ))
    rows.sort(key=lambda r: (r.n, r.gamma, r.method))
    return SweepResult(tuple(rows))


# -- CSV ------------------------------------------------------------------------

def _fmt(x: float) -> str:
    return format(x, ".17g")


def write_csv(result: SweepResult, path) -> None:
    """Fixed header, 17-significant-digit decimals, LF endings, UTF-8."""
    lines = [CSV_HEADER]
    for r in result.rows:
        lines.append(
            f"{r.model},{r.n},{_fmt(r.gamma)},{r.method},{_fmt(r.energy_re)},"
            f"{_fmt(r.energy_im)},{_fmt(r.mx)},{_fmt(r.chi_x)},{_fmt(r.final_cost)},{r.seed}"
        )
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def read_csv(path) -> SweepResult:
    """Inverse of :func:`write_csv`; numeric fields round-trip bitwise."""
    with open(path, "r", encoding="utf-8", newline="") as fh:
        lines = fh.read().splitlines()
    if not lines or lines[0] != CSV_HEADER:
        raise ValueError(f"{path}: missing or unexpected header")
    rows = []
    for line in lines[1:]:
        parts = line.split(",")
        if len(parts) != 10:
            raise ValueError(f"{path}: malformed row {line!r}")
        rows.append(SweepRow(
            model=parts[0], n=int(parts[1]), gamma=float(parts[2]), method=parts[3],
            energy_re=float(parts[4]), energy_im=float(parts[5]), mx=float(parts[6]),
            chi_x=float(parts[7]), final_cost=float(parts[8]), seed=int(parts[9]),
        ))
    return SweepResult(tuple(rows))


# -- SVG ------------------------------------------------------------------------

_PALETTE = (
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
    "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f",
)

MX = "mx"
CHI_X = "chi_x"
QUANTITIES = (MX, CHI_X)

_Y_LABELS = {MX: "⟨Mx⟩", CHI_X: "χx"}


def _ticks(lo: float, hi: float, count: int = 5) -> list[float]:
    return [lo + (hi - lo) * i / (count - 1) for i in range(count)]


def render_svg(result: SweepResult, quantity: str, path) -> None:
    """One polyline per (n, method) curve; self-contained SVG, no external assets."""
    if quantity not in QUANTITIES:
        raise ValueError(f"unknown quantity {quantity!r}; expected one of {QUANTITIES}")
    if not result.rows:
        raise ValueError("cannot plot an empty sweep result")

    groups: dict[tuple[int, str], list[SweepRow]] = {}
    for r in result.rows:
        groups.setdefault((r.n, r.method), []).append(r)
    for rows in groups.values():
        rows.sort(key=lambda r: r.gamma)

    xs = [r.gamma for r in result.rows]
    ys = [getattr(r, quantity) for r in result.rows]
    x_lo, x_hi = min(xs), max(xs)
    y_lo, y_hi = min(ys), max(ys)
    if x_hi == x_lo:
        x_lo, x_hi = x_lo - 1.0, x_hi + 1.0
    pad = 0.05 * (y_hi - y_lo) or 1.0
    y_lo, y_hi = y_lo - pad, y_hi + pad

    width, height = 720.0, 480.0
    ml, mr, mt, mb = 72.0, 24.0, 24.0, 56.0
    pw, ph = width - ml - mr, height - mt - mb

    def px(g: float) -> float:
        return ml + (g - x_lo) / (x_hi - x_lo) * pw

    def py(v: float) -> float:
        return mt + (y_hi - v) / (y_hi - y_lo) * ph

    x_label = "Γ" if all(r.model == model.TIM for r in result.rows) else "Γ_I"
    if any(r.model == model.TIM for r in result.rows) and any(
        r.model == model.NH_TIM for r in result.rows
    ):
        x_label = "Γ"
    y_label = _Y_LABELS[quantity]

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:g}" height="{height:g}" '
        f'viewBox="0 0 {width:g} {height:g}">',
        f'<rect width="{width:g}" height="{height:g}" fill="white"/>',
        f'<line x1="{ml}" y1="{mt + ph}" x2="{ml + pw}" y2="{mt + ph}" stroke="black"/>',
        f'<line x1="{ml}" y1="{mt}" x2="{ml}" y2="{mt + ph}" stroke="black"/>',
    ]
    for t in _ticks(x_lo, x_hi):
        x = px(t)
        parts.append(f'<line x1="{x:.2f}" y1="{mt + ph}" x2="{x:.2f}" y2="{mt + ph + 6}" stroke="black"/>')
        parts.append(
            f'<text x="{x:.2f}" y="{mt + ph + 22}" font-size="13" text-anchor="middle" '
            f'font-family="sans-serif">{t:.3g}</text>'
        )
    for t in _ticks(y_lo, y_hi):
        y = py(t)
        parts.append(f'<line x1="{ml - 6}" y1="{y:.2f}" x2="{ml}" y2="{y:.2f}" stroke="black"/>')
        parts.append(
            f'<text x="{ml - 10}" y="{y + 4:.2f}" font-size="13" text-anchor="end" '
            f'font-family="sans-serif">{t:.3g}</text>'
        )
    parts.append(
        f'<text x="{ml + pw / 2:.2f}" y="{height - 12}" font-size="15" text-anchor="middle" '
        f'font-family="sans-serif">{x_label}</text>'
    )
    parts.append(
        f'<text x="18" y="{mt + ph / 2:.2f}" font-size="15" text-anchor="middle" '
        f'font-family="sans-serif" transform="rotate(-90 18 {mt + ph / 2:.2f})">{y_label}</text>'
    )

    for i, ((n, method), rows) in enumerate(sorted(groups.items())):
        color = _PALETTE[i % len(_PALETTE)]
        points = " ".join(
            f"{px(r.gamma):.2f},{py(getattr(r, quantity)):.2f}" for r in rows
        )
        parts.append(
            f'<polyline points="{points}" fill="none" stroke="{color}" stroke-width="1.8"/>'
        )
        ly = mt + 16 + 18 * i
        parts.append(
            f'<line x1="{ml + pw - 130:.2f}" y1="{ly - 4}" x2="{ml + pw - 104:.2f}" '
            f'y2="{ly - 4}" stroke="{color}" stroke-width="1.8"/>'
        )
        parts.append(
            f'<text x="{ml + pw - 98:.2f}" y="{ly}" font-size="13" '
            f'font-family="sans-serif">n={n} {method}</text>'
        )
    parts.append("</svg>")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(parts) + "\n")


# -- comparison and peak extraction ----------------------------------------------

@dataclass(frozen=True)
class MethodDeviation:
    max_mx: float
    mean_mx: float
    max_energy: float
    mean_energy: float


@dataclass(frozen=True)
class CompareSummary:
    per_n: dict[int, MethodDeviation]

    @property
    def max_mx_deviation(self) -> float:
        return max((d.max_mx for d in self.per_n.values()), default=0.0)

    def exceeds(self, bound: float) -> bool:
        return self.max_mx_deviation > bound


def compare(result: SweepResult) -> CompareSummary:
    """Per-n deviations between the two methods evaluated on the same grid."""
    vqe_rows = {(r.n, r.gamma): r for r in result.rows if r.method == VQE}
    exact_rows = {(r.n, r.gamma): r for r in result.rows if r.method == EXACT}
    if not vqe_rows or not exact_rows:
        raise DimensionError("compare needs rows from both methods")
    if set(vqe_rows) != set(exact_rows):
        raise DimensionError("methods were evaluated on different grids")
    per_n: dict[int, MethodDeviation] = {}
    for n in sorted({k[0] for k in vqe_rows}):
        mx_devs, e_devs = [], []
        for key in sorted(k for k in vqe_rows if k[0] == n):
            v, x = vqe_rows[key], exact_rows[key]
            mx_devs.append(abs(v.mx - x.mx))
            e_devs.append(abs(complex(v.energy_re, v.energy_im)
                              - complex(x.energy_re, x.energy_im)))
        per_n[n] = MethodDeviation(
            max_mx=max(mx_devs), mean_mx=sum(mx_devs) / len(mx_devs),
            max_energy=max(e_devs), mean_energy=sum(e_devs) / len(e_devs),
        )
    return CompareSummary(per_n)


def interpolate_peak(gammas: np.ndarray, values: np.ndarray) -> tuple[float, float]:
    """Peak (location, height) from a quadratic fit through the grid maximum.

    Fits the parabola through the maximal sample and its two neighbors; at a
    grid boundary the sample itself is returned.
    """
    gammas = np.asarray(gammas, dtype=float)
    values = np.asarray(values, dtype=float)
    if gammas.shape != values.shape or gammas.ndim != 1 or len(gammas) < 3:
        raise ValueError("need matching 1-d arrays with at least 3 samples")
    k = int(np.argmax(values))
    if k == 0 or k == len(values) - 1:
        return float(gammas[k]), float(values[k])
    x0, x1, x2 = gammas[k - 1:k + 2]
    y0, y1, y2 = values[k - 1:k + 2]
    denom = (x0 - x1) * (x0 - x2) * (x1 - x2)
    a = (x2 * (y1 - y0) + x1 * (y0 - y2) + x0 * (y2 - y1)) / denom
    b = (x2**2 * (y0 - y1) + x1**2 * (y2 - y0) + x0**2 * (y1 - y2)) / denom
    if a == 0 or not math.isfinite(a):
        return float(x1), float(y1)
    loc = -b / (2 * a)
    c = y1 - a * x1**2 - b * x1
    return float(loc), float(a * loc**2 + b * loc + c)
