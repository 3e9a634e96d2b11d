"""Verification suites over every layer of the quantization pipeline.

Each suite returns a list of check records (name, parameters, measured
discrepancy, tolerance, pass flag).  Exact algebraic identities run on
rational coefficients with zero tolerance; lattice identities carry the
tolerances they are expected to meet at the default desk-scale resolutions.
All randomness is drawn from a single seeded generator, so a fixed
configuration reproduces its report byte for byte.
"""

from __future__ import annotations

from dataclasses import dataclass, fields
from fractions import Fraction

import numpy as np

from . import quantize as qz
from . import representation as rep
from .grids import (GridFunction, GridSpec, cosine_taper, gaussian_pq, norm_l2,
                    partial_fourier)
from .lie_aff import (CoadjointPoint, GroupElement, LieAlgebraElement, X, Y,
                      bracket, classify_orbit, coadjoint_act, exp_group,
                      hamiltonian)
from .rational import ComplexRational
from .representation import HalfLineFunction
from .symbol_algebra import p_r, star_commutator

SUITE_NAMES = ("lie-hom", "conjugation", "generator", "exponentiate", "unitarity")


@dataclass
class CheckResult:
    test: str
    params: dict
    discrepancy: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.discrepancy <= self.tolerance

    def to_obj(self) -> dict:
        return {"test": self.test, "params": self.params,
                "discrepancy": self.discrepancy, "tolerance": self.tolerance,
                "pass": self.passed}


@dataclass
class RunConfig:
    """Knobs for the verification suites; defaults reproduce the desk-scale runs.

    The evolution window is narrower than the representation default because
    1000 RK4 steps on 4096 points must stay inside the integrator's stability
    region for the largest coefficient pair exercised.
    """

    # (p, q) lattice
    p_min: float = -16.0
    p_max: float = 16.0
    q_min: float = -8.0
    q_max: float = 8.0
    n_p: int = 256
    n_q: int = 256
    # logarithmic half-line lattice
    s_max: float = 8.0
    lattice_n: int = 4096
    sigma: str = "both"  # "plus", "minus" or "both"
    # evolution
    evolve_s_max: float = 6.0
    rk4_steps: int = 1000
    rk4_deriv: str = "fd8"
    # truncated series
    r_truncation: int = 20
    # optional single-case override for the exponentiate suite
    exp_alpha: float | None = None
    exp_beta: float | None = None
    exp_t: float | None = None
    # backends and reproducibility
    deriv: str = "spectral"
    seed: int = 20260808
    output: str = "json"
    # tolerances
    tol_exact: float = 0.0
    tol_conjugation: float = 1e-6
    tol_conjugation_terminating: float = 1e-10
    tol_generator_grid: float = 1e-8
    tol_slope: float = 0.2
    tol_exp_rk4: float = 1e-6
    tol_exp_char: float = 1e-9
    tol_exp_closed: float = 1e-9
    tol_unitarity: float = 1e-8
    tol_exp_group: float = 1e-12

    def __post_init__(self):
        for f_ in fields(self):
            if f_.name.startswith("tol_") and getattr(self, f_.name) < 0:
                raise ValueError(f"{f_.name} must be non-negative")
        if self.sigma not in ("plus", "minus", "both"):
            raise ValueError("sigma must be 'plus', 'minus' or 'both'")

    def grid_spec(self) -> GridSpec:
        return GridSpec(self.p_min, self.p_max, self.q_min, self.q_max,
                        self.n_p, self.n_q)

    def sigmas(self) -> tuple[int, ...]:
        return {"plus": (1,), "minus": (-1,), "both": (1, -1)}[self.sigma]

    @classmethod
    def from_dict(cls, obj: dict) -> "RunConfig":
        known = {f_.name for f_ in fields(cls)}
        unknown = set(obj) - known
        if unknown:
            raise ValueError(f"unknown config fields: {sorted(unknown)}")
        return cls(**obj)


def _random_fraction(rng, lo: int = -9, hi: int = 9, max_den: int = 8) -> Fraction:
    return Fraction(int(rng.integers(lo, hi + 1)), int(rng.integers(1, max_den + 1)))


def _random_element(rng) -> LieAlgebraElement:
    return LieAlgebraElement(_random_fraction(rng), _random_fraction(rng))


# -- lie-hom: exact star-product homomorphism and coadjoint geometry -------------

def _expm2_oracle(alpha: float, beta: float):
    """Scaling-and-squaring Taylor exponential of [[alpha, beta], [0, 0]].

    Runs in extended precision so it can serve as an independent reference
    for the closed-form group exponential down to 1e-12 relative error.
    """
    a = np.zeros((2, 2), dtype=np.longdouble)
    a[0, 0] = alpha
    a[0, 1] = beta
    norm_a = float(abs(a).sum(axis=1).max())
    squarings = max(0, int(np.ceil(np.log2(max(norm_a, 1e-300) / 0.25))))
    b = a / (2 ** squarings)
    out = np.eye(2, dtype=np.longdouble)
    term = np.eye(2, dtype=np.longdouble)
    for k in range(1, 40):
        term = term @ b / k
        out = out + term
        if float(abs(term).max()) < 1e-25:
            break
    for _ in range(squarings):
        out = out @ out
    return out


def suite_lie_hom(cfg: RunConfig) -> list[CheckResult]:
    rng = np.random.default_rng(cfg.seed)
    results = []

    # star-commutator vs bracket, exact over 200 random rational pairs
    bad = 0
    for _ in range(200):
        z = _random_element(rng)
        t = _random_element(rng)
        i_cr = ComplexRational(0, 1)
        lhs = star_commutator(i_cr * hamiltonian(z), i_cr * hamiltonian(t))
        rhs = i_cr * hamiltonian(bracket(z, t))
        if lhs != rhs:
            bad += 1
    results.append(CheckResult("star_commutator_is_bracket",
                               {"samples": 200}, float(bad), cfg.tol_exact))

    # higher contractions vanish identically for k >= 2
    rng2 = np.random.default_rng(cfg.seed + 1)
    bad = 0
    for _ in range(200):
        zt = hamiltonian(_random_element(rng2))
        tt = hamiltonian(_random_element(rng2))
        for k in range(2, 11):
            if not p_r(zt, tt, k).is_zero():
                bad += 1
    results.append(CheckResult("higher_contractions_vanish",
                               {"samples": 200, "orders": "2..10"},
                               float(bad), cfg.tol_exact))

    # orbit classification is invariant under 500 exact rational actions
    rng3 = np.random.default_rng(cfg.seed + 2)
    bad = 0
    for _ in range(500):
        g = GroupElement(Fraction(int(rng3.integers(1, 10)), int(rng3.integers(1, 10))),
                         _random_fraction(rng3))
        f_pt = CoadjointPoint(_random_fraction(rng3),
                              _random_fraction(rng3, lo=-4, hi=4))
        moved = coadjoint_act(g, f_pt)
        if classify_orbit(moved) != classify_orbit(f_pt):
            bad += 1
        if f_pt.y == 0 and moved != f_pt:
            bad += 1
    results.append(CheckResult("orbit_classification_invariant",
                               {"samples": 500}, float(bad), cfg.tol_exact))

    # exact group-action property on rationals
    rng4 = np.random.default_rng(cfg.seed + 3)
    bad = 0
    for _ in range(200):
        g1 = GroupElement(Fraction(int(rng4.integers(1, 10)), int(rng4.integers(1, 10))),
                          _random_fraction(rng4))
        g2 = GroupElement(Fraction(int(rng4.integers(1, 10)), int(rng4.integers(1, 10))),
                          _random_fraction(rng4))
        f_pt = CoadjointPoint(_random_fraction(rng4), _random_fraction(rng4))
        if coadjoint_act(g1 * g2, f_pt) != coadjoint_act(g1, coadjoint_act(g2, f_pt)):
            bad += 1
    results.append(CheckResult("coadjoint_action_composes",
                               {"samples": 200}, float(bad), cfg.tol_exact))

    # closed-form exponential vs extended-precision matrix exponential
    alphas = np.concatenate([
        -np.logspace(-12, np.log10(50.0), 40),
        np.logspace(-12, np.log10(50.0), 40),
        [0.0],
    ])
    worst = 0.0
    for alpha in alphas:
        for beta in (0.0, 1.0, -2.5):
            g = exp_group(LieAlgebraElement(float(alpha), beta))
            oracle = _expm2_oracle(float(alpha), beta)
            err_a = abs(g.a - float(oracle[0, 0])) / max(1.0, abs(float(oracle[0, 0])))
            err_b = abs(g.b - float(oracle[0, 1])) / max(1.0, abs(float(oracle[0, 1])))
            worst = max(worst, err_a, err_b)
    results.append(CheckResult("exp_group_matches_matrix_exponential",
                               {"alpha_range": "1e-12..50", "points": len(alphas) * 3},
                               worst, cfg.tol_exp_group))
    return results


# -- conjugation: truncated series vs closed-form generator ----------------------

def suite_conjugation(cfg: RunConfig) -> list[CheckResult]:
    spec = cfg.grid_spec()
    u = gaussian_pq(spec)
    results = []
    cases = [("X", X), ("Y", Y), ("X+Y", X + Y)]
    for name, z in cases:
        disc = qz.verify_conjugation(z, u, cfg.r_truncation, method=cfg.deriv)
        results.append(CheckResult("conjugation_identity",
                                   {"Z": name, "R": cfg.r_truncation,
                                    "grid": [cfg.n_p, cfg.n_q]},
                                   disc, cfg.tol_conjugation))
    disc = qz.verify_conjugation(X, u, 1, method=cfg.deriv)
    results.append(CheckResult("conjugation_identity_terminating",
                               {"Z": "X", "R": 1, "grid": [cfg.n_p, cfg.n_q]},
                               disc, cfg.tol_conjugation_terminating))
    return results


# -- generator: commutation relations and the flow derivative ---------------------

def _s_lattice_gaussian(cfg: RunConfig, s_max: float) -> GridFunction:
    spec = GridSpec(p_min=-1.0, p_max=1.0, q_min=-s_max, q_max=s_max,
                    n_p=8, n_q=cfg.lattice_n)
    s = spec.q_values()
    vals = np.exp(-s ** 2) * cosine_taper(len(s))
    return GridFunction(spec, "s", vals.astype(complex))


def suite_generator(cfg: RunConfig) -> list[CheckResult]:
    rng = np.random.default_rng(cfg.seed + 4)
    results = []

    # coefficient-level commutator identity, exact on rationals
    bad = 0
    for _ in range(100):
        z = _random_element(rng)
        t = _random_element(rng)
        if not qz.generator_commutator_matches_bracket(z, t):
            bad += 1
    results.append(CheckResult("generator_commutator_exact",
                               {"samples": 100}, float(bad), cfg.tol_exact))

    # lattice-level commutator on the s-lattice
    v = _s_lattice_gaussian(cfg, cfg.s_max)
    pairs = [("X,Y", X, Y), ("(2,-3),(1,1)", LieAlgebraElement(2.0, -3.0),
              LieAlgebraElement(1.0, 1.0))]
    for name, z, t in pairs:
        op_z = qz.GeneratorOp.from_element(z)
        op_t = qz.GeneratorOp.from_element(t)
        op_w = qz.GeneratorOp.from_element(bracket(z, t))
        lhs = (qz.apply_generator(op_z, qz.apply_generator(op_t, v, cfg.deriv), cfg.deriv).values
               - qz.apply_generator(op_t, qz.apply_generator(op_z, v, cfg.deriv), cfg.deriv).values)
        rhs = qz.apply_generator(op_w, v, cfg.deriv).values
        disc = float(np.sqrt(np.sum(np.abs(lhs - rhs) ** 2) * v.measure()) / norm_l2(v))
        results.append(CheckResult("generator_commutator_lattice",
                                   {"pair": name, "n": cfg.lattice_n},
                                   disc, cfg.tol_generator_grid))

    # the sheared coordinates reduce the generator to one dimension
    spec = cfg.grid_spec()
    v_xq = partial_fourier(gaussian_pq(spec), tail_warn=None)
    for name, z in [("X", X), ("Y", Y), ("(1,1)", X + Y)]:
        op = qz.GeneratorOp.from_element(z)
        route_a = qz.to_s_coordinates(qz.apply_generator(op, v_xq, cfg.deriv), tail_warn=None)
        route_b = qz.apply_generator(op, qz.to_s_coordinates(v_xq, tail_warn=None), cfg.deriv)
        disc = float(np.sqrt(np.sum(np.abs(route_a.values - route_b.values) ** 2)
                             * route_a.measure()) / norm_l2(v_xq))
        results.append(CheckResult("generator_one_dimensional_in_s",
                                   {"Z": name, "grid": [cfg.n_p, cfg.n_q]},
                                   disc, cfg.tol_generator_grid))

    # flow derivative reproduces the generator at rate O(h^2)
    for sigma in cfg.sigmas():
        f = HalfLineFunction.gaussian(sigma=sigma, s_max=cfg.s_max, n=cfg.lattice_n)
        for name, z in [("X", X), ("Y", Y), ("(2,-3)", LieAlgebraElement(2.0, -3.0))]:
            hs = np.array([1e-2, 1e-3, 1e-4])
            discs = np.array([rep.check_generator(z, f, float(h), deriv=cfg.deriv)
                              for h in hs])
            slope = float(np.polyfit(np.log(hs), np.log(discs), 1)[0])
            results.append(CheckResult("flow_derivative_order",
                                       {"Z": name, "sigma": sigma,
                                        "h": [float(h) for h in hs], "slope": slope},
                                       abs(slope - 2.0), cfg.tol_slope))
    return results


# -- exponentiate: integrated flow vs the closed form ------------------------------

EXPONENTIATE_COEFFS = ((1.0, 0.0), (0.0, 1.0), (1.0, 1.0), (2.0, -3.0))
EXPONENTIATE_TIMES = (0.1, 0.5, 1.0)


def suite_exponentiate(cfg: RunConfig) -> list[CheckResult]:
    coeffs = EXPONENTIATE_COEFFS
    times = EXPONENTIATE_TIMES
    if cfg.exp_alpha is not None and cfg.exp_beta is not None:
        coeffs = ((cfg.exp_alpha, cfg.exp_beta),)
    if cfg.exp_t is not None:
        times = (cfg.exp_t,)
    results = []
    for sigma in cfg.sigmas():
        f = HalfLineFunction.gaussian(sigma=sigma, s_max=cfg.evolve_s_max,
                                      n=cfg.lattice_n)
        ref_norm = rep.norm(f)
        for alpha, beta in coeffs:
            z = LieAlgebraElement(alpha, beta)
            for t in times:
                closed = rep.rep_one_param(z, t, f, window_tol=None)
                params = {"alpha": alpha, "beta": beta, "t": t, "sigma": sigma,
                          "n": cfg.lattice_n}
                num = rep.evolve_cauchy(z, t, f, cfg.rk4_steps, method="rk4",
                                        deriv=cfg.rk4_deriv)
                disc = float(np.sqrt(np.sum(np.abs(num.values - closed.values) ** 2)
                                     * f.ds) / ref_norm)
                results.append(CheckResult("exponentiate_rk4",
                                           dict(params, steps=cfg.rk4_steps,
                                                deriv=cfg.rk4_deriv),
                                           disc, cfg.tol_exp_rk4))
                chc = rep.evolve_cauchy(z, t, f, cfg.rk4_steps, method="characteristics")
                disc = float(np.sqrt(np.sum(np.abs(chc.values - closed.values) ** 2)
                                     * f.ds) / ref_norm)
                results.append(CheckResult("exponentiate_characteristics",
                                           params, disc, cfg.tol_exp_char))
                choice = rep.OMEGA_PLUS if sigma == 1 else rep.OMEGA_MINUS
                via_group = rep.rep_apply(choice, exp_group(t * z), f, window_tol=None)
                disc = float(np.sqrt(np.sum(np.abs(via_group.values - closed.values) ** 2)
                                     * f.ds) / ref_norm)
                results.append(CheckResult("exponentiate_group_element",
                                           params, disc, cfg.tol_exp_closed))
    return results


# -- unitarity: isometry and the homomorphism property -----------------------------

def suite_unitarity(cfg: RunConfig) -> list[CheckResult]:
    rng = np.random.default_rng(cfg.seed + 5)
    results = []
    for sigma in cfg.sigmas():
        choice = rep.OMEGA_PLUS if sigma == 1 else rep.OMEGA_MINUS
        f = HalfLineFunction.gaussian(sigma=sigma, s_max=cfg.s_max, n=cfg.lattice_n,
                                      center=-0.4, width=1.0)
        g2fun = HalfLineFunction.from_callable(
            lambda s: (s + 0.3j) * np.exp(-((s - 0.6) / 0.8) ** 2),
            sigma=sigma, s_max=cfg.s_max, n=cfg.lattice_n)
        base_inner = rep.inner_product(f, g2fun)
        ref_norm = rep.norm(f)
        worst_unitary = 0.0
        worst_hom = 0.0
        for _ in range(50):
            g1 = GroupElement(float(np.exp(rng.uniform(-1, 1))), float(rng.uniform(-3, 3)))
            g2 = GroupElement(float(np.exp(rng.uniform(-1, 1))), float(rng.uniform(-3, 3)))
            tf = rep.rep_apply(choice, g1, f, window_tol=None)
            tg = rep.rep_apply(choice, g1, g2fun, window_tol=None)
            worst_unitary = max(worst_unitary,
                                abs(rep.inner_product(tf, tg) - base_inner))
            once = rep.rep_apply(choice, g1 * g2, f, window_tol=None)
            twice = rep.rep_apply(choice, g1, rep.rep_apply(choice, g2, f,
                                                            window_tol=None),
                                  window_tol=None)
            hom = float(np.sqrt(np.sum(np.abs(once.values - twice.values) ** 2)
                                * f.ds) / ref_norm)
            worst_hom = max(worst_hom, hom)
        results.append(CheckResult("inner_product_preserved",
                                   {"sigma": sigma, "pairs": 50},
                                   worst_unitary, cfg.tol_unitarity))
        results.append(CheckResult("representation_homomorphism",
                                   {"sigma": sigma, "pairs": 50},
                                   worst_hom, cfg.tol_unitarity))
    return results


_SUITES = {
    "lie-hom": suite_lie_hom,
    "conjugation": suite_conjugation,
    "generator": suite_generator,
    "exponentiate": suite_exponentiate,
    "unitarity": suite_unitarity,
}


def run_suites(names, cfg: RunConfig | None = None) -> list[CheckResult]:
    """Run the named suites ("all" expands to every suite) and collect results."""
    cfg = cfg or RunConfig()
    if isinstance(names, str):
        names = SUITE_NAMES if names == "all" else (names,)
    results = []
    for name in names:
        if name not in _SUITES:
            raise ValueError(f"unknown suite {name!r}; choose from "
                             f"{', '.join(SUITE_NAMES)} or 'all'")
        results.extend(_SUITES[name](cfg))
    return results
