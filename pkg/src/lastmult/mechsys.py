"""The oscillator as a first-order system, its point symmetries and an RK4 oracle."""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from lastmult.errors import DivergenceError, DomainError, StructuralError
from lastmult.symkernel import (
    Expr,
    SampleDomain,
    Sym,
    add,
    as_expr,
    cos,
    differentiate,
    evaluate_array,
    compile_expr,
    mul,
    sin,
    total_derivative,
)

T, U1, U2 = Sym("t"), Sym("u1"), Sym("u2")
X, U = Sym("x"), Sym("u")

PHASE = ("t", "u1", "u2")
PDE = ("t", "x", "u")


@dataclass(frozen=True)
class FirstOrderSystem:
    """``d(state)/dt = rhs`` with time symbol ``t``."""

    k: float
    rhs: dict
    time: str = "t"
    states: tuple = ("u1", "u2")

    def vector_field(self) -> tuple:
        """Coefficients of ``(d/dt, d/du1, d/du2)``."""
        return (as_expr(1),) + tuple(self.rhs[s] for s in self.states)

    def total_derivative(self, e: Expr) -> Expr:
        return total_derivative(e, self.time, {s: self.rhs[s] for s in self.states})


def sho_system(k: float) -> FirstOrderSystem:
    """``u1' = u2, u2' = -k^2 u1``."""
    if not k > 0:
        raise DomainError(f"oscillator frequency must be positive, got k={k}")
    return FirstOrderSystem(k=k, rhs={"u1": U2, "u2": mul(-1, k, k, U1)})


@dataclass(frozen=True)
class GeneratorField:
    """A point-symmetry generator as coefficients on a fixed coordinate tuple."""

    coords: tuple
    coeffs: tuple
    tag: str = ""

    def __post_init__(self):
        if self.coords not in (PHASE, PDE):
            raise StructuralError(f"unknown coordinate signature {self.coords}")
        if len(self.coeffs) != len(self.coords):
            raise StructuralError("one coefficient per coordinate required")
        object.__setattr__(self, "coeffs", tuple(as_expr(c) for c in self.coeffs))

    def coefficient(self, coord: str) -> Expr:
        return self.coeffs[self.coords.index(coord)]

    def act(self, f: Expr) -> Expr:
        """Apply the generator as a derivation to a function of the coordinates."""
        return add(*(mul(c, differentiate(f, name)) for name, c in zip(self.coords, self.coeffs)))

    def __add__(self, other):
        _same_signature(self, other)
        return GeneratorField(self.coords, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)), f"{self.tag}+{other.tag}")

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c, tag=None):
        return GeneratorField(self.coords, tuple(mul(c, a) for a in self.coeffs), tag or f"({c})*{self.tag}")

    def __rmul__(self, c):
        return self.scale(c)


def _same_signature(a: GeneratorField, b: GeneratorField):
    if a.coords != b.coords:
        raise StructuralError(f"mixed coordinate signatures {a.coords} and {b.coords}")


def symmetry_commutator(a: GeneratorField, b: GeneratorField) -> GeneratorField:
    """Lie bracket ``[a, b]^i = a(b^i) - b(a^i)``."""
    _same_signature(a, b)
    coeffs = tuple(a.act(bc) - b.act(ac) for ac, bc in zip(a.coeffs, b.coeffs))
    return GeneratorField(a.coords, coeffs, f"[{a.tag},{b.tag}]")


def phase_field(xi, eta, eta1, tag) -> GeneratorField:
    return GeneratorField(PHASE, (xi, eta, eta1), tag)


def symmetry_catalog(k: float, variant: str = "printed") -> list:
    """The eight point symmetries of ``x'' + k^2 x = 0`` in ``(t, u1, u2)`` form.

    ``variant="printed"`` keeps the published ``d/du2`` coefficients verbatim,
    including those of the seventh and eighth generators, which do not agree
    with the first prolongation of their ``(d/dt, d/du1)`` parts.
    ``variant="prolonged"`` recomputes every ``d/du2`` coefficient from the
    first prolongation.
    """
    if not k > 0:
        raise DomainError("k must be positive")
    c, s = cos(k * T), sin(k * T)
    c2, s2 = cos(2 * k * T), sin(2 * k * T)
    u1, u2 = U1, U2
    printed = [
        (0, c, -k * s),
        (0, s, k * c),
        (0, u1, u2),
        (1, 0, 0),
        (c2, -k * u1 * s2, -(2 * k**2 * u1 * c2 - k * u2 * s2)),
        (s2, k * u1 * c2, -(2 * k**2 * u1 * s2 + k * u2 * c2)),
        (u1 * c, -k * u1**2 * s, -(k**2 * u1**2 * c + k * u1 * u2 * c + u2**2 * c)),
        (u1 * s, k * u1**2 * c, -(k**2 * u1**2 * c - k * u1 * u2 * c + u2**2 * s)),
    ]
    if variant == "printed":
        return [phase_field(*row, f"G{i + 1}") for i, row in enumerate(printed)]
    if variant == "prolonged":
        return [prolonged_field(row[0], row[1], f"G{i + 1}") for i, row in enumerate(printed)]
    raise ValueError(f"unknown catalog variant {variant!r}")


def first_prolongation(xi, eta) -> Expr:
    """``d/du2`` coefficient ``D eta - u2 D xi`` for ``xi, eta`` depending on ``(t, u1)``."""
    xi, eta = as_expr(xi), as_expr(eta)
    if "u2" in (xi.free_symbols | eta.free_symbols):
        raise StructuralError("point symmetry coefficients may not depend on u2")
    d = lambda f: total_derivative(f, "t", {"u1": U2})
    return d(eta) - U2 * d(xi)


def prolonged_field(xi, eta, tag="") -> GeneratorField:
    return phase_field(xi, eta, first_prolongation(xi, eta), tag)


def symmetry_defect(sys: FirstOrderSystem, g: GeneratorField) -> Expr:
    """Symmetry condition of ``x'' = -k^2 x`` using the generator's own ``d/du2`` part.

    The second-prolongation coefficient is built from the stored first-order
    coefficient: ``eta2 = D(eta1) - x'' D(xi)`` with ``x''`` eliminated, and
    the defect is ``eta2 + k^2 eta``. It vanishes on shell for a genuine,
    correctly prolonged symmetry.
    """
    if g.coords != PHASE:
        raise StructuralError("symmetry defect needs a phase-space generator")
    xi, eta, eta1 = g.coeffs
    D = sys.total_derivative
    eta2 = D(eta1) - sys.rhs["u2"] * D(xi)
    return eta2 + mul(sys.k**2, eta)


def prolongation_mismatch(g: GeneratorField) -> Expr:
    """Stored ``d/du2`` coefficient minus the first prolongation of ``(xi, eta)``."""
    xi, eta, eta1 = g.coeffs
    return eta1 - first_prolongation(xi, eta)


@dataclass(frozen=True)
class Trajectory:
    t0: float
    dt: float
    u1: np.ndarray
    u2: np.ndarray
    k: float
    method: str = "rk4"
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if len(self.u1) < 2 or len(self.u1) != len(self.u2):
            raise ValueError("a trajectory needs at least two matching samples")
        if not self.dt > 0:
            raise ValueError("dt must be positive")
        if not (np.all(np.isfinite(self.u1)) and np.all(np.isfinite(self.u2))):
            raise ValueError("trajectory samples must be finite")
        for arr in (self.u1, self.u2):
            arr.setflags(write=False)

    @property
    def n(self) -> int:
        return len(self.u1)

    @property
    def times(self) -> np.ndarray:
        return self.t0 + self.dt * np.arange(self.n)

    def bindings(self, idx=None) -> dict:
        sl = slice(None) if idx is None else idx
        return {"t": self.times[sl], "u1": self.u1[sl], "u2": self.u2[sl]}

    def energy(self) -> np.ndarray:
        return 0.5 * (self.u2**2 + self.k**2 * self.u1**2)

    def to_csv(self, path) -> None:
        with Path(path).open("w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["t", "u1", "u2"])
            for row in zip(self.times, self.u1, self.u2):
                w.writerow([f"{v:.17g}" for v in row])


def read_trajectory_csv(path, k: float) -> Trajectory:
    data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    t = data[:, 0]
    return Trajectory(float(t[0]), float(t[1] - t[0]), data[:, 1].copy(), data[:, 2].copy(), k)


def _rhs_callable(sys: FirstOrderSystem):
    fns = [compile_expr(sys.rhs[s], ("t", "u1", "u2")) for s in sys.states]

    def f(t, y):
        return np.array([np.real(fn(t, y[0], y[1])) for fn in fns], dtype=float)

    return f


def integrate(sys: FirstOrderSystem, initial, t_span, dt: float) -> Trajectory:
    """Classical fixed-step fourth-order Runge-Kutta."""
    t0, t1 = map(float, t_span)
    if not dt > 0:
        raise ValueError("dt must be positive")
    if t1 - t0 < dt:
        raise ValueError("time span shorter than one step")
    # the grid must end on t1, so the step is spread evenly over the span
    n_steps = int(round((t1 - t0) / dt))
    requested, dt = dt, (t1 - t0) / n_steps
    f = _rhs_callable(sys)
    y = np.empty((n_steps + 1, 2))
    y[0] = initial
    t = t0
    for i in range(n_steps):
        yi = y[i]
        k1 = f(t, yi)
        k2 = f(t + dt / 2, yi + dt / 2 * k1)
        k3 = f(t + dt / 2, yi + dt / 2 * k2)
        k4 = f(t + dt, yi + dt * k3)
        nxt = yi + dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        if not np.all(np.isfinite(nxt)):
            raise DivergenceError(f"non-finite state after t={t}", last_good_time=t)
        y[i + 1] = nxt
        t = t0 + (i + 1) * dt
    return Trajectory(t0, dt, y[:, 0].copy(), y[:, 1].copy(), sys.k, meta={"steps": n_steps, "requested_dt": requested})


def sho_exact(k: float, initial, times) -> tuple:
    """Closed-form oscillator solution; test oracle."""
    a, b = initial
    times = np.asarray(times)
    return a * np.cos(k * times) + b / k * np.sin(k * times), -a * k * np.sin(k * times) + b * np.cos(k * times)


PHASE_DOMAIN = SampleDomain(box=(0.3, 2.0))
