"""Scenario loading, validation and execution.

A scenario is a TOML document with a versioned schema; unknown keys are
hard errors so that configs stay reproducible.  Each scenario targets one
module, builds its objects, runs the named checks against them at the
stated tolerances, and emits artifacts (trajectory CSV, spectrum CSV,
matrix JSON) plus a deterministic report.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Dict, List, Optional

import numpy as np

try:
    import tomllib  # py311+
except ModuleNotFoundError:  # pragma: no cover
    import tomli as tomllib

from . import blades, checks, dynamics, grassmann, lattice, weyl, witt
from .checks import CheckContext, CheckResult

SPEC_VERSION = 1

TOP_LEVEL_KEYS = {
    "spec_version", "name", "module", "description",
    "model", "run", "lattice", "vacuum", "spinor", "correspondence",
    "grassmann", "checks", "output",
}


class ConfigError(Exception):
    """Scenario file failed to parse or validate."""


@dataclass(frozen=True)
class ScenarioInfo:
    name: str
    description: str
    module: str
    reference: str


BUNDLED: Dict[str, ScenarioInfo] = {
    "oscillator": ScenarioInfo(
        "oscillator",
        "harmonic oscillator: classical flow, Heisenberg frame, pairing invariant",
        "dynamics",
        "quadratic phase-space action and its two flows",
    ),
    "massless_particle": ScenarioInfo(
        "massless_particle",
        "massless relativistic particle with a Lagrange-multiplier kernel",
        "dynamics",
        "multiplier block kernel, momenta conserved, x linear in tau",
    ),
    "bars_sp2": ScenarioInfo(
        "bars_sp2",
        "sp(2) gauge model: traceless multiplier matrix, constraint closure",
        "dynamics",
        "three quadratic constraints closing under the Poisson bracket",
    ),
    "dirac_gammas": ScenarioInfo(
        "dirac_gammas",
        "gamma matrices from the light-cone Witt ideal of Cl(1,3)",
        "witt_spinor",
        "minimal-left-ideal matrix representation and its Clifford relation",
    ),
    "scalar_lattice": ScenarioInfo(
        "scalar_lattice",
        "free scalar field on a 4-site ring: flows and mode energies",
        "field_lattice",
        "field phase-space kernel with the periodic discrete Laplacian",
    ),
    "schrodinger_well": ScenarioInfo(
        "schrodinger_well",
        "lattice Schrodinger field with a site potential: norm-conserving flow",
        "field_lattice",
        "first-order complex field evolution from an off-diagonal kernel",
    ),
    "zero_point_energy": ScenarioInfo(
        "zero_point_energy",
        "toy Dirac chain: standard vs frequency-split vacuum energies",
        "field_lattice",
        "vacuum family of the lattice fermion algebra and its energy ledger",
    ),
    "quantize_correspondence": ScenarioInfo(
        "quantize_correspondence",
        "Poisson brackets vs commutators of Weyl-ordered operators",
        "weyl_rep",
        "degree <= 2 bracket/commutator agreement on the safe subspace",
    ),
    "grassmann_components": ScenarioInfo(
        "grassmann_components",
        "Berezin calculus demo: vacuum function, state, component expansion",
        "grassmann",
        "wave functions on anticommuting coordinates and their 2^n components",
    ),
}


def bundled_scenario_path(name: str) -> Path:
    if name not in BUNDLED:
        raise ConfigError(
            f"unknown bundled scenario {name!r}; available: {sorted(BUNDLED)}"
        )
    ref = resources.files("cliffield") / "scenarios" / f"{name}.toml"
    return Path(str(ref))


def load_config(path_or_name: str) -> dict:
    path = Path(path_or_name)
    if not path.exists() and path_or_name in BUNDLED:
        path = bundled_scenario_path(path_or_name)
    if not path.exists():
        raise ConfigError(f"scenario file not found: {path_or_name}")
    try:
        with open(path, "rb") as fh:
            config = tomllib.load(fh)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"{path}: TOML parse error: {exc}") from exc
    validate_config(config, source=str(path))
    return config


def validate_config(config: dict, source: str = "<config>") -> None:
    unknown = set(config) - TOP_LEVEL_KEYS
    if unknown:
        raise ConfigError(f"{source}: unknown keys {sorted(unknown)}")
    version = config.get("spec_version")
    if version != SPEC_VERSION:
        raise ConfigError(
            f"{source}: spec_version must be {SPEC_VERSION}, got {version!r}"
        )
    for key in ("name", "module"):
        if not isinstance(config.get(key), str):
            raise ConfigError(f"{source}: missing or non-string {key!r}")
    for check in config.get("checks", []):
        if "name" not in check:
            raise ConfigError(f"{source}: each check needs a name")
        if check["name"] not in checks.REGISTRY:
            raise ConfigError(
                f"{source}: check {check['name']!r} is not a registered invariant"
            )
        tol = check.get("tolerance")
        if tol is not None and not (isinstance(tol, (int, float)) and tol >= 0):
            raise ConfigError(f"{source}: tolerance must be nonnegative")


@dataclass
class ScenarioReport:
    name: str
    module: str
    seed: int
    results: List[CheckResult]
    payload: dict
    artifacts: Dict[str, str]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def to_json_dict(self) -> dict:
        return {
            "scenario": self.name,
            "module": self.module,
            "seed": self.seed,
            "spec_version": SPEC_VERSION,
            "status": "pass" if self.passed else "fail",
            "checks": [r.to_json_dict() for r in self.results],
            "payload": self.payload,
            "artifacts": dict(self.artifacts),
        }


def _tolerances(config: dict, scale: float) -> Dict[str, float]:
    return {
        c["name"]: float(c.get("tolerance", 1e-9)) * scale
        for c in config.get("checks", [])
    }


def _grid(run_cfg: dict) -> np.ndarray:
    tau_max = float(run_cfg.get("tau_max", 10.0))
    steps = int(run_cfg.get("tau_steps", 41))
    if steps < 1:
        raise ConfigError("tau_steps must be positive")
    return np.linspace(0.0, tau_max, steps)


# ---------------------------------------------------------------------------
# module executors
# ---------------------------------------------------------------------------

def _run_dynamics(config: dict, cc: CheckContext, outdir: Path) -> ScenarioReport:
    model_cfg = dict(config.get("model", {}))
    kind = model_cfg.pop("kind", None)
    if kind is None:
        raise ConfigError("dynamics scenario needs model.kind")
    if "A" in model_cfg:
        model_cfg["A"] = [list(map(float, row)) for row in model_cfg["A"]]
    model = dynamics.model_factory(kind, **model_cfg)
    run_cfg = config.get("run", {})
    taus = _grid(run_cfg)
    z0 = np.array(run_cfg.get("z0", [1.0] + [0.0] * (2 * model.n - 1)), dtype=complex)
    if z0.shape != (2 * model.n,):
        raise ConfigError(f"z0 must have {2 * model.n} components")
    traj = dynamics.classical_trajectory(model, z0, taus)
    tols = _tolerances(config, cc.tolerance_scale)
    results: List[CheckResult] = []
    for name, tol in tols.items():
        if name == "dynamics.symplecticity":
            dev = checks.measure_symplecticity(model, taus)
        elif name == "dynamics.pairing":
            dev = checks.measure_pairing(model, z0, taus)
        elif name == "dynamics.oscillator_period":
            omega = model.params.get("omega", 1.0)
            C = dynamics.heisenberg_flow(model, 2 * math.pi / omega).C
            dev = float(np.abs(C - np.eye(2 * model.n)).max())
        elif name == "dynamics.sp2_closure":
            dev = checks.check_dynamics_sp2_closure(cc).deviation
        elif name == "dynamics.quantize_map":
            dev = checks.check_dynamics_quantize_map(cc).deviation
        else:
            raise ConfigError(f"check {name!r} not supported by dynamics scenarios")
        results.append(CheckResult(name, float(dev), tol))
    artifacts = {}
    out_cfg = config.get("output", {})
    if "trajectory_csv" in out_cfg:
        path = outdir / out_cfg["trajectory_csv"]
        traj.to_csv(path)
        artifacts["trajectory_csv"] = path.name
    payload = {
        "model": model.kind,
        "n": model.n,
        "energy_initial": float(np.real(model.energy(z0))),
        "energy_drift": dynamics.energy_drift(model, z0, taus),
    }
    return ScenarioReport(config["name"], config["module"], cc.seed, results,
                          payload, artifacts)


def _run_spinor(config: dict, cc: CheckContext, outdir: Path) -> ScenarioReport:
    sp_cfg = config.get("spinor", {})
    sig_pair = sp_cfg.get("sig", [1, 3])
    sig = blades.Signature(int(sig_pair[0]), int(sig_pair[1]))
    scheme = witt.WittScheme(sp_cfg.get("scheme", "spacetime"))
    ctx = blades.make_algebra(sig)
    wb = witt.witt_basis(ctx, scheme)
    vac_bits = sp_cfg.get("vacuum", "1" * wb.n)
    spec = witt.VacuumSpec.from_bitstring(vac_bits)
    if spec.n != wb.n:
        raise ConfigError(
            f"vacuum bitstring length {spec.n} does not match n={wb.n}"
        )
    ib = witt.ideal_basis(wb, spec)
    gammas = [witt.matrix_rep(ctx.gamma(i), ib) for i in range(1, ctx.n_generators + 1)]
    tols = _tolerances(config, cc.tolerance_scale)
    results = []
    for name, tol in tols.items():
        if name == "witt.relations":
            dev = checks.measure_witt_relations(wb)
        elif name == "witt.gamma_clifford":
            dev = checks.measure_gamma_clifford(ib)
        elif name == "witt.matrix_homomorphism":
            dev = checks.check_witt_matrix_homomorphism(cc).deviation
        else:
            raise ConfigError(f"check {name!r} not supported by spinor scenarios")
        results.append(CheckResult(name, float(dev), tol))
    artifacts = {}
    out_cfg = config.get("output", {})
    emit = out_cfg.get("emit")
    if emit:
        payload_matrices = {
            f"gamma{i + 1}": witt.matrix_to_json(g) for i, g in enumerate(gammas)
        }
        doc = {
            "sig": [sig.p, sig.q],
            "scheme": scheme.value,
            "vacuum": spec.bitstring(),
            "basis_order": [list(s) for s in ib.subsets],
            "matrices": payload_matrices,
            "max_clifford_residual": checks.measure_gamma_clifford(ib),
        }
        path = outdir / emit
        path.write_text(json.dumps(doc, indent=2, sort_keys=True))
        artifacts["emit"] = path.name
    payload = {
        "sig": [sig.p, sig.q],
        "scheme": scheme.value,
        "vacuum": spec.bitstring(),
        "witt_residual": checks.measure_witt_relations(wb),
        "clifford_residual": checks.measure_gamma_clifford(ib),
    }
    return ScenarioReport(config["name"], config["module"], cc.seed, results,
                          payload, artifacts)


def _run_lattice(config: dict, cc: CheckContext, outdir: Path) -> ScenarioReport:
    lat_cfg = config.get("lattice", {})
    lat = lattice.Lattice(
        dims=tuple(int(d) for d in lat_cfg.get("dims", [1])),
        spacing=float(lat_cfg.get("spacing", 1.0)),
    )
    model_cfg = dict(config.get("model", {}))
    kind = model_cfg.pop("kind", None)
    if kind is None:
        raise ConfigError("lattice scenario needs model.kind")
    fm = lattice.build_model(lat, kind, **model_cfg)
    tols = _tolerances(config, cc.tolerance_scale)
    results = []
    payload: dict = {"model": kind, "dims": list(lat.dims), "spacing": lat.spacing}
    spectrum: Optional[np.ndarray] = None
    if fm.is_bosonic:
        spectrum = np.sqrt(np.clip(np.linalg.eigvalsh(fm.K @ fm.K.conj().T), 0.0, None))
        run_cfg = config.get("run", {})
        taus = _grid(run_cfg)
        model = fm.quadratic_model()
        rng = cc.rng()
        z0 = np.array(
            run_cfg.get("z0", rng.normal(size=2 * lat.sites)), dtype=complex
        )
        for name, tol in tols.items():
            if name == "lattice.flow_symplecticity":
                dev = dynamics.symplecticity_deviation(model, taus)
            elif name == "dynamics.pairing":
                dev = checks.measure_pairing(model, z0, taus)
            elif name == "lattice.field_brackets":
                dev = checks.check_lattice_field_brackets(cc).deviation
            elif name == "lattice.boson_witt":
                dev = max(lattice.boson_witt_deviation(
                    lattice.boson_witt(fm, cutoff=6)).values()) if lat.sites <= 2 \
                    else checks.check_lattice_boson_witt(cc).deviation
            else:
                raise ConfigError(f"check {name!r} not supported for bosonic lattices")
            results.append(CheckResult(name, float(dev), tol))
        payload["energy_form"] = "phase-space quadratic kernel"
    else:
        rep = lattice.vacuum_energy(fm)
        spectrum = rep.spectrum
        payload["vacuum_energy"] = {k: v for k, v in sorted(rep.energies.items())}
        payload["constants"] = rep.constants
        for name, tol in tols.items():
            if name == "lattice.zero_point":
                dev = max(checks.measure_zero_point(fm).values())
            elif name == "lattice.fermion_algebra":
                dev = lattice.fermion_algebra(fm).anticommutator_deviation()
            elif name == "lattice.vacuum_census":
                fa = lattice.fermion_algebra(fm)
                worst = 0
                for mask in range(1 << fa.n_modes):
                    barred = frozenset(
                        m for m in range(1, fa.n_modes + 1) if mask >> (m - 1) & 1
                    )
                    vac = lattice.make_vacuum(fa, lattice.VacuumChoice.bare(barred))
                    rank = lattice.fock_rank(lattice.fock_basis(fa, vac))
                    worst = max(worst, abs(rank - fa.dim))
                dev = float(worst)
            else:
                raise ConfigError(f"check {name!r} not supported for fermionic lattices")
            results.append(CheckResult(name, float(dev), tol))
    artifacts = {}
    out_cfg = config.get("output", {})
    if "spectrum_csv" in out_cfg and spectrum is not None:
        path = outdir / out_cfg["spectrum_csv"]
        with open(path, "w") as fh:
            fh.write("index,value\n")
            for i, v in enumerate(np.sort(np.real(spectrum))):
                fh.write(f"{i},{v!r}\n")
        artifacts["spectrum_csv"] = path.name
    if spectrum is not None:
        payload["spectrum"] = [float(v) for v in np.sort(np.real(spectrum))]
    return ScenarioReport(config["name"], config["module"], cc.seed, results,
                          payload, artifacts)


def _run_weyl(config: dict, cc: CheckContext, outdir: Path) -> ScenarioReport:
    corr_cfg = config.get("correspondence", {})
    n = int(corr_cfg.get("n", 2))
    cutoff = int(corr_cfg.get("cutoff", 12))
    pairs = int(corr_cfg.get("pairs", 50))
    convention = corr_cfg.get("convention", "hermitian")
    form = weyl.SymplecticForm.euclidean(n)
    rng = cc.rng()
    worst = 0.0
    last_report = None
    for _ in range(pairs):
        polys = []
        for _ in range(2):
            f = weyl.PhasePolynomial.zero(n)
            for _ in range(3):
                expo = [0] * (2 * n)
                for _ in range(int(rng.integers(0, 3))):
                    expo[int(rng.integers(0, 2 * n))] += 1
                f = f + weyl.PhasePolynomial(n, {tuple(expo): int(rng.integers(-3, 4))})
            polys.append(f)
        last_report = weyl.bracket_correspondence(
            polys[0], polys[1], form, cutoff=cutoff, convention=convention
        )
        worst = max(worst, last_report.max_abs_deviation)
    tols = _tolerances(config, cc.tolerance_scale)
    results = []
    for name, tol in tols.items():
        if name == "weyl.correspondence":
            results.append(CheckResult(name, worst, tol))
        elif name == "weyl.canonical_relations":
            ops = weyl.mode_ops(n, cutoff, convention=convention)
            dev = weyl.canonical_relation_deviation(ops, form)
            results.append(CheckResult(name, dev, tol))
        else:
            raise ConfigError(f"check {name!r} not supported by weyl scenarios")
    payload = {
        "pairs": pairs,
        "cutoff": cutoff,
        "convention": convention,
        "max_abs_deviation": worst,
        "safe_dim": last_report.safe_dim if last_report else 0,
        "constants": dict(last_report.constants) if last_report else {},
    }
    return ScenarioReport(config["name"], config["module"], cc.seed, results,
                          payload, {})


def _run_grassmann(config: dict, cc: CheckContext, outdir: Path) -> ScenarioReport:
    g_cfg = config.get("grassmann", {})
    n = int(g_cfg.get("n", 3))
    unbarred = [int(x) for x in g_cfg.get("unbarred", [])]
    vac = grassmann.vacuum_function(n, unbarred)
    poly = grassmann.GrassmannFunction.one(n)
    for term in g_cfg.get("terms", []):
        poly = poly + grassmann.GrassmannFunction.monomial(
            n, [int(i) for i in term["xi"]],
            complex(float(term.get("re", 0.0)), float(term.get("im", 0.0))),
        )
    state = grassmann.gmul(poly, vac)
    comps = grassmann.expand_components(state)
    round_trip = grassmann.from_components(n, comps)
    tols = _tolerances(config, cc.tolerance_scale)
    results = []
    for name, tol in tols.items():
        if name == "grassmann.expand_bijection":
            dev = 0.0 if round_trip == state else 1.0
        elif name == "grassmann.operator_algebra":
            dev = checks.check_grassmann_operator_algebra(cc).deviation
        elif name == "grassmann.witt_equivalence":
            dev = checks.check_grassmann_witt_equivalence(cc).deviation
        else:
            raise ConfigError(f"check {name!r} not supported by grassmann scenarios")
        results.append(CheckResult(name, float(dev), tol))
    artifacts = {}
    out_cfg = config.get("output", {})
    if "components_json" in out_cfg:
        path = outdir / out_cfg["components_json"]
        doc = {
            "n": n,
            "state": state.to_json_dict(),
            "components": [[c.real, c.imag] for c in comps],
        }
        path.write_text(json.dumps(doc, indent=2, sort_keys=True))
        artifacts["components_json"] = path.name
    payload = {"n": n, "vacuum_unbarred": unbarred, "n_components": len(comps)}
    return ScenarioReport(config["name"], config["module"], cc.seed, results,
                          payload, artifacts)


EXECUTORS = {
    "dynamics": _run_dynamics,
    "witt_spinor": _run_spinor,
    "field_lattice": _run_lattice,
    "weyl_rep": _run_weyl,
    "grassmann": _run_grassmann,
}


def run_scenario(config: dict, cc: CheckContext, outdir: Path) -> ScenarioReport:
    module = config["module"]
    if module not in EXECUTORS:
        raise ConfigError(
            f"unknown module {module!r}; supported: {sorted(EXECUTORS)}"
        )
    outdir.mkdir(parents=True, exist_ok=True)
    return EXECUTORS[module](config, cc, outdir)
