# app_ceroslab/services/experiments.py
"""
Los nueve tipos de experimento. Cada uno recibe el contexto y la entrada
validada, escribe sus tablas y devuelve un resumen legible por máquina.
"""
import logging
import math
from math import comb

import numpy as np

from app_ceroslab.numerics import correlations as corr
from app_ceroslab.numerics.equidist import (
    RadialGauge,
    equidist_report,
    gauss_lattice_check,
    lattice_area,
    lattice_count,
    transport_check,
)
from app_ceroslab.numerics.errors import DomainError
from app_ceroslab.numerics.evaluator import admissible_beta, weyl_witness
from app_ceroslab.numerics.regions import AnnulusSector, Disk, Rectangle, region_from_dict
from app_ceroslab.numerics.sequences import MultiplierKind
from app_ceroslab.numerics.serialization import (
    write_csv,
    write_discrepancy,
    write_enclosures,
    write_json,
    write_spectral_model,
)
from app_ceroslab.numerics.zeros import count_region, localize_zeros

from .contexto import Artefacto, ResultadoExperimento, radius_for_sigma

logger = logging.getLogger(__name__)

# el control h = 0 debe superar la cota ηx^{1+b} por este factor
DIAGONAL_CONTROL_FACTOR = 10.0


def _csv(ctx, entry, suffix, columns, rows, **extra):
    path = ctx.path(entry, suffix)
    filas = write_csv(path, columns, rows, ctx.header(experiment=entry["kind"], **extra))
    return Artefacto(path.name, path, "csv", filas)


def _json(ctx, entry, suffix, data, **extra):
    path = ctx.path(entry, suffix)
    write_json(path, data, ctx.header(experiment=entry["kind"], **extra))
    return Artefacto(path.name, path, "json")


def _rng(ctx, entry):
    # flujo propio por experimento para que el orden del lote no cambie los sorteos
    salt = sum(entry["kind"].encode("utf-8"))
    return np.random.default_rng([ctx.seed % 2**63, salt])


def _count_all(ctx, spec, regions, min_samples=None):
    min_samples = min_samples or ctx.min_samples
    return ctx.map(lambda region: count_region(spec, region, min_samples), regions)


def _discrepancy(ctx, entry, reports, suffix="_discrepancy.csv"):
    gauge = ctx.gauge(entry)
    report = equidist_report(reports, gauge, ctx.tau(entry), ctx.C(entry), ctx.weight)
    flagged = sum(row.proxy_flagged for row in report.rows)
    if flagged:
        logger.warning("%s filas con el proxy de cuasi-constancia fuera de factor 2", flagged)
    path = ctx.path(entry, suffix)
    filas = write_discrepancy(report, path, ctx.header(experiment=entry["kind"], gauge=gauge.kind.value))
    summary = report.summary()
    summary["gauge"] = gauge.to_dict()
    summary["proxy_flagged"] = flagged
    return report, summary, Artefacto(path.name, path, "csv", filas)


# ---------------------------------------------------------------------------
# Conteos de ceros
# ---------------------------------------------------------------------------

def zero_count_sweep(ctx, entry):
    """n_F(D(0, R)) frente a ν(R) para cada radio y semilla."""
    params = entry["params"]
    radii = sorted(params["radii"])
    seeds = params.get("seeds") or [ctx.seed]
    tol = ctx.constantes["global_count_tol"]
    mean_tol = ctx.constantes["global_mean_tol"]
    rows, artefactos = [], []
    for seed in seeds:
        spec = ctx.series(radii[-1], seed)
        reports = _count_all(ctx, spec, [Disk(R) for R in radii], params.get("min_samples"))
        for R, rep in zip(radii, reports):
            rel = abs(rep.count - rep.gamma_mass) / rep.gamma_mass if rep.gamma_mass else math.inf
            rows.append(
                {
                    "seed": seed,
                    "R": R,
                    "count": rep.count,
                    "gamma": rep.gamma_mass,
                    "rel_error": rel,
                    "min_boundary_modulus": rep.min_boundary_modulus,
                    "refinement_depth": rep.refinement_depth,
                    "samples": rep.samples,
                    "perturbations": rep.perturbations,
                    "pass": rel <= tol,
                }
            )
        if params["localize"]:
            target = params.get("target_diameter", 0.5)
            enclosures = localize_zeros(spec, Disk(radii[0]), target, executor=ctx.pool)
            path = ctx.path(entry, f"_zeros_seed{seed}.csv")
            filas = write_enclosures(enclosures, path, ctx.header(experiment=entry["kind"], seed=seed))
            artefactos.append(Artefacto(path.name, path, "csv", filas))
            unresolved = sum(not e.resolved for e in enclosures)
            if unresolved:
                logger.warning("%s encierros sin resolver en la semilla %s", unresolved, seed)
    columns = list(rows[0]) if rows else ["seed", "R", "count", "gamma"]
    artefactos.insert(0, _csv(ctx, entry, "_counts.csv", columns, rows))

    means = []
    for R in radii:
        counts = [row["count"] for row in rows if row["R"] == R]
        gamma = next(row["gamma"] for row in rows if row["R"] == R)
        mean = math.fsum(counts) / len(counts)
        means.append(
            {
                "R": R,
                "mean_count": mean,
                "gamma": gamma,
                "pass": abs(mean - gamma) <= mean_tol * gamma,
            }
        )
    summary = {
        "rows": len(rows),
        "passed": sum(row["pass"] for row in rows),
        "means": means,
        "all_pass": all(row["pass"] for row in rows) and all(m["pass"] for m in means),
    }
    return ResultadoExperimento(summary, artefactos)


def sector_equidist(ctx, entry):
    """Conteos en m sectores iguales del anillo [r1, r2] frente a su masa γ."""
    params = entry["params"]
    r1, r2, m = params["r1"], params["r2"], params["sectors"]
    spec = ctx.series(r2)
    sectors = [AnnulusSector(r1, r2, j / m, (j + 1) / m) for j in range(m)]
    reports = _count_all(ctx, spec, sectors, params.get("min_samples"))
    tol = ctx.constantes["sector_tol"]
    rows = []
    for j, rep in enumerate(reports):
        rel = abs(rep.count - rep.gamma_mass) / rep.gamma_mass
        rows.append(
            {
                "sector": j,
                "theta1": j / m,
                "theta2": (j + 1) / m,
                "count": rep.count,
                "gamma": rep.gamma_mass,
                "rel_error": rel,
                "pass": rel <= tol,
            }
        )
    artefactos = [_csv(ctx, entry, "_sectors.csv", list(rows[0]), rows)]
    _, disc_summary, disc_artefact = _discrepancy(ctx, entry, reports)
    artefactos.append(disc_artefact)
    summary = {
        "sectors": m,
        "total_count": sum(row["count"] for row in rows),
        "total_gamma": math.fsum(row["gamma"] for row in rows),
        "passed": sum(row["pass"] for row in rows),
        "all_pass": all(row["pass"] for row in rows),
        "discrepancy": disc_summary,
    }
    return ResultadoExperimento(summary, artefactos)


def _local_family(ctx, entry):
    params = entry["params"]
    if params.get("disks"):
        return [region_from_dict(d) for d in params["disks"]]
    if "hole_family" in params:
        hole = params["hole_family"]
        return [
            Disk(hole["kappa"] * math.log(j) ** 0.25, complex(j * j, 0.0))
            for j in range(hole["j_min"], hole["j_max"] + 1)
        ]
    rng = _rng(ctx, entry)
    gauge = ctx.gauge(entry)
    modulus = rng.uniform(params["modulus_min"], params["modulus_max"], params["count"])
    angle = rng.uniform(0.0, 1.0, params["count"])
    disks = []
    for s, t in zip(modulus.tolist(), angle.tolist()):
        center = s * complex(math.cos(2 * math.pi * t), math.sin(2 * math.pi * t))
        disks.append(Disk(params["radius_factor"] * gauge.rho(s), center))
    return disks


def local_disks(ctx, entry):
    """Conteos en discos locales, con el informe de discrepancia (γ, ρ)."""
    params = entry["params"]
    disks = _local_family(ctx, entry)
    reach = max(abs(d.center) + d.r for d in disks)
    spec = ctx.series(reach)
    reports = _count_all(ctx, spec, disks, params.get("min_samples"))
    rows = [
        {
            "re": rep.region.center.real,
            "im": rep.region.center.imag,
            "r": rep.region.r,
            "count": rep.count,
            "gamma": rep.gamma_mass,
        }
        for rep in reports
    ]
    artefactos = [_csv(ctx, entry, "_disks.csv", ["re", "im", "r", "count", "gamma"], rows)]
    summary = {"disks": len(disks)}
    if "hole_family" in params:
        summary["empty_disks"] = sum(row["count"] == 0 for row in rows)
    else:
        report, disc_summary, disc_artefact = _discrepancy(ctx, entry, reports)
        artefactos.append(disc_artefact)
        fraction = report.pass_count / len(report.rows)
        summary.update(
            discrepancy=disc_summary,
            pass_fraction=fraction,
            all_pass=fraction >= ctx.constantes["local_pass_fraction"],
        )
    return ResultadoExperimento(summary, artefactos)


# ---------------------------------------------------------------------------
# Correlaciones
# ---------------------------------------------------------------------------

def _shifts(params):
    if params.get("h"):
        return sorted(set(params["h"]))
    return list(range(1, params["h_max"] + 1))


def _autocorrelation(ctx, entry):
    params = entry["params"]
    kind = ctx.multiplier.kind
    x = params["x"]
    hs = _shifts(params)
    seq = ctx.sequence(0, x + max(hs) + 2)
    rows = []
    if kind is MultiplierKind.THUE_MORSE:
        C = ctx.constantes["tm_mahler_C"]
        for h in hs:
            empirical = corr.correlation_sum(seq, 0, x - 1, h).real
            model = float(corr.tm_sigma(h)) * x
            bound = C * max(h, 1) * math.log(x + 1)
            rows.append((h, empirical, model, abs(empirical - model), bound))
    elif kind is MultiplierKind.SQUAREFREE:
        C, e = ctx.constantes["mirsky_C"], ctx.constantes["mirsky_exponent"]
        for h in hs:
            empirical = corr.correlation_sum(seq, 1, x, h).real
            model = corr.mirsky_D(h) * x
            rows.append((h, empirical, model, abs(empirical - model), C * x**e))
    elif kind is MultiplierKind.GRS:
        C = ctx.constantes["grs_C"]
        values = seq.values.real
        M = np.arange(1, x + 1, dtype=float)
        for h in hs:
            if h == 0:
                continue
            partial = np.cumsum(values[: x + 1] * values[h : x + 1 + h])[1:]
            ratio = float(np.max(np.abs(partial) / (h * (1 + np.log(M)))))
            rows.append((h, ratio, 0.0, ratio, C))
    else:
        for h in hs:
            empirical = abs(corr.autocorr(seq, x, h))
            rows.append((h, empirical, None, None, None))
    table = [
        {
            "h": h,
            "empirical": emp,
            "model": model,
            "delta": delta,
            "bound": bound,
            "pass": None if bound is None else delta <= bound,
        }
        for h, emp, model, delta, bound in rows
    ]
    columns = ["h", "empirical", "model", "delta", "bound", "pass"]
    artefact = _csv(ctx, entry, "_correlations.csv", columns, table, family=kind.value, x=x)
    checked = [row for row in table if row["pass"] is not None]
    summary = {
        "family": kind.value,
        "x": x,
        "rows": len(table),
        "passed": sum(row["pass"] for row in checked),
        "all_pass": all(row["pass"] for row in checked),
    }
    return ResultadoExperimento(summary, [artefact])


def _chowla(ctx, entry):
    params = entry["params"]
    kind = ctx.multiplier.kind
    base = ctx.multiplier.base
    b = ctx.constantes["chowla_b"]
    x, eta, trials = params["x"], params["eta"], params["trials"]
    rows = []
    for h in sorted(set(params["h"]) | {0}):
        moment = corr.chowla_moment_mc(
            kind, x, eta, h, trials, ctx.seed, b=b, base=base, executor=ctx.pool
        )
        rows.append(
            {"h": h, **moment.to_dict(), "pass": moment.diagonal or moment.mean_sq <= moment.bound}
        )
    columns = ["h", "mean_sq", "bound", "trials", "std_error", "low_confidence", "diagonal", "pass"]
    artefact = _csv(ctx, entry, "_chowla.csv", columns, rows, family=kind.value, x=x, eta=eta)
    diagonal = next(row for row in rows if row["h"] == 0)
    control = diagonal["mean_sq"] >= DIAGONAL_CONTROL_FACTOR * diagonal["bound"]
    summary = {
        "family": kind.value,
        "rows": len(rows),
        "all_pass": control and all(row["pass"] for row in rows),
        "diagonal_ratio": diagonal["mean_sq"] / diagonal["bound"],
        "diagonal_control": control,
        "low_confidence": any(row["low_confidence"] for row in rows),
    }
    return ResultadoExperimento(summary, [artefact])


def exact_rademacher_zero_probability(n):
    """P[Σ_{k<n} ε_k = 0] para signos de Rademacher."""
    return comb(n, n // 2) / 2**n if n % 2 == 0 else 0.0


def _anticoncentration(ctx, entry):
    params = entry["params"]
    kind = ctx.multiplier.kind
    n, trials, eps, theta = params["n"], params["trials"], params["eps"], params["theta"]
    grid = [complex(re, im) for re, im in params.get("z_grid") or [[0.0, 0.0]]]
    estimate = corr.anticoncentration_mc(kind, n, theta, eps, grid, trials, ctx.seed)
    std_error = math.sqrt(max(estimate * (1 - estimate), 1.0 / trials) / trials)
    row = {"n": n, "estimate": estimate, "std_error": std_error, "exact": None, "pass": None}
    if kind is MultiplierKind.IID_RADEMACHER and theta == 0 and grid == [0j] and eps <= 2:
        exact = exact_rademacher_zero_probability(n)
        row.update(exact=exact, **{"pass": abs(estimate - exact) <= 3 * std_error})
    artefact = _csv(ctx, entry, "_anticoncentration.csv", list(row), [row], family=kind.value)
    return ResultadoExperimento({**row, "all_pass": row["pass"] is not False}, [artefact])


def correlation_suite(ctx, entry):
    mode = entry["params"]["mode"]
    if mode == "chowla":
        return _chowla(ctx, entry)
    if mode == "anticoncentration":
        return _anticoncentration(ctx, entry)
    return _autocorrelation(ctx, entry)


# ---------------------------------------------------------------------------
# Medidas espectrales
# ---------------------------------------------------------------------------

DYADIC_COLUMNS = ["m", "p", "a", "b", "mass", "bound", "pass"]


def _dyadic_csv(ctx, entry, rows):
    return _csv(ctx, entry, "_dyadic.csv", DYADIC_COLUMNS, [row.as_row() for row in rows])


def spectral_suite(ctx, entry):
    """Modelo espectral de la familia frente a su versión empírica."""
    params = entry["params"]
    kind = ctx.multiplier.kind
    rng = _rng(ctx, entry)
    artefactos = []
    if kind is MultiplierKind.THUE_MORSE:
        depth = params["depth"]
        N = 2**depth
        t = np.sort(rng.uniform(0.0, 1.0, params["n_t"]))
        empirical = np.asarray(corr.empirical_model(ctx.sequence(0, N), N).density(t), dtype=float)
        model = np.asarray(corr.tm_riesz_density(t, depth), dtype=float)
        scale = np.maximum(np.abs(model), 1e-300)
        rel = np.abs(empirical - model) / scale
        rows = zip(t.tolist(), empirical.tolist(), model.tolist(), rel.tolist())
        artefactos.append(_csv(ctx, entry, "_density.csv", ["t", "empirical", "model", "rel_error"], rows))
        spectral = corr.tm_riesz_model(depth)
        C = ctx.constantes["tm_spectral_C"]
        dyadic = corr.tm_dyadic_bounds(params.get("m_max", 6), params["extra_depth"], C)
        artefactos.append(_dyadic_csv(ctx, entry, dyadic))
        summary = {
            "family": kind.value,
            "depth": depth,
            "max_rel_error": float(rel.max()),
            "dyadic_C": C,
            "dyadic_fitted_C": corr.tm_fitted_constant(dyadic),
            "dyadic_pass": all(row.passed for row in dyadic),
        }
    elif kind is MultiplierKind.SQUAREFREE:
        spectral = corr.sqfree_atoms(params["d_max"])
        x = params["x"]
        seq = ctx.sequence(0, x + params["h_max"] + 2)
        rows = []
        for h in range(params["h_max"] + 1):
            coefficient = spectral.fourier_coefficient(h)
            mirsky = corr.mirsky_D(h)
            empirical = corr.correlation_sum(seq, 1, x, h).real / x
            rows.append((h, coefficient, mirsky, empirical, abs(coefficient - mirsky)))
        columns = ["h", "atoms", "mirsky_D", "empirical", "delta"]
        artefactos.append(_csv(ctx, entry, "_coefficients.csv", columns, rows))
        c = ctx.constantes["sqfree_spectral_c"]
        dyadic = corr.sqfree_dyadic_bounds(spectral, params.get("m_max", 8), c)
        artefactos.append(_dyadic_csv(ctx, entry, dyadic))
        summary = {
            "family": kind.value,
            "d_max": params["d_max"],
            "total_mass": spectral.total_mass(),
            "mass_error": abs(spectral.total_mass() - corr.SIX_OVER_PI2),
            "max_coefficient_error": max(row[4] for row in rows),
            "dyadic_c": c,
            "dyadic_min_ratio": min(row.mass / (row.b - row.a) ** 1.5 for row in dyadic),
            "dyadic_pass": all(row.passed for row in dyadic),
        }
    elif kind is MultiplierKind.GRS:
        depth = params["depth"]
        N = 2**depth
        t = np.sort(rng.uniform(0.0, 1.0, params["n_t"]))
        empirical = np.asarray(corr.empirical_model(ctx.sequence(0, N), N).density(t), dtype=float)
        rows = zip(t.tolist(), empirical.tolist())
        artefactos.append(_csv(ctx, entry, "_density.csv", ["t", "empirical"], rows))
        spectral = corr.lebesgue_model()
        # |P_N(t)|² ≤ 2N para N = 2^n
        summary = {
            "family": kind.value,
            "depth": depth,
            "max_density": float(empirical.max()),
            "all_pass": bool(empirical.max() <= 2.0 + 1e-9),
        }
    else:
        raise DomainError("No hay modelo espectral para la familia", family=kind.value)
    path = ctx.path(entry, "_model.json")
    write_spectral_model(spectral, path, ctx.header(experiment=entry["kind"]))
    artefactos.append(Artefacto(path.name, path, "json"))
    return ResultadoExperimento(summary, artefactos)


# ---------------------------------------------------------------------------
# Sumas de Weyl
# ---------------------------------------------------------------------------

def _witnesses(ctx, entry, witness):
    rng = _rng(ctx, entry)
    c_prime = ctx.constantes["weyl_witness_c"]
    log_lo, log_hi = math.log(witness["sigma_min"]), math.log(witness["sigma_max"])
    targets = []
    for _ in range(witness["count"]):
        sigma = math.exp(rng.uniform(log_lo, log_hi))
        targets.append((radius_for_sigma(ctx.weight, sigma), sigma, float(rng.uniform(0.0, 1.0))))
    betas = [admissible_beta(sigma) for _, sigma, _ in targets]
    spec = ctx.series(max(R * (1 + b) for (R, _, _), b in zip(targets, betas)))
    rows = []
    for (R, sigma, vartheta), beta in zip(targets, betas):
        found = weyl_witness(spec, R, vartheta, beta, c_prime * sigma**0.25, n_r=witness["n_r"])
        rows.append({"R0": R, "sigma": sigma, "vartheta": vartheta, "beta": beta, **found.to_dict()})
    columns = ["R0", "sigma", "vartheta", "beta", "R", "theta", "modulus", "threshold", "found"]
    return rows, columns


def weyl_scan(ctx, entry):
    """F/μ frente a W_R en una malla angular, con las cotas K y K'."""
    params = entry["params"]
    radii = sorted(params["radii"])
    spec = ctx.series(radii[-1])
    K, K_prime = ctx.constantes["laplace_K"], ctx.constantes["upper_K_prime"]
    thetas = np.arange(params["n_theta"]) / params["n_theta"]
    rows = []
    for R in radii:
        _, sigma = ctx.weight.nu_sigma(R)
        laplace_bound = K * ctx.weight.delta_at(R) * math.log(sigma) ** 1.5
        upper_bound = K_prime * math.sqrt(sigma)
        W = np.asarray(spec.weyl(R, thetas))
        for theta, w in zip(thetas, W):
            F = spec.eval_normalized(R, float(theta))
            row = {
                "R": R,
                "theta": float(theta),
                "abs_F": abs(F),
                "abs_W": abs(w),
                "delta": abs(F - w),
                "laplace_bound": laplace_bound,
                "upper_bound": upper_bound,
                "full_delta": None,
            }
            if params["truncation"]:
                z = R * complex(math.cos(2 * math.pi * theta), math.sin(2 * math.pi * theta))
                full = spec.full_sum(z, spec.max_index - 1)
                row["full_delta"] = abs(full - w)
            reference = row["full_delta"] if row["full_delta"] is not None else row["delta"]
            row["pass"] = reference <= laplace_bound and abs(F) <= upper_bound
            rows.append(row)
    artefactos = [_csv(ctx, entry, "_scan.csv", list(rows[0]), rows)]
    summary = {
        "rows": len(rows),
        "passed": sum(row["pass"] for row in rows),
        "all_pass": all(row["pass"] for row in rows),
    }
    if "witness" in params:
        witness_rows, columns = _witnesses(ctx, entry, params["witness"])
        artefactos.append(_csv(ctx, entry, "_witness.csv", columns, witness_rows))
        summary["witnesses_found"] = sum(row["found"] for row in witness_rows)
        summary["witnesses"] = len(witness_rows)
    return ResultadoExperimento(summary, artefactos)


# ---------------------------------------------------------------------------
# Condiciones de correlación
# ---------------------------------------------------------------------------

EPS_MODELS = {
    "mirsky": (corr.mirsky_eps1(), corr.sqfree_eps2),
    "thue_morse": (corr.tm_eps1, corr.tm_eps2()),
}


def condition_check(ctx, entry):
    """Condiciones 1 y 2 (y opcionalmente (a)–(d)) con β = σ^{-e}."""
    params = entry["params"]
    p, q, A = params["p"], params["q"], params["A"]
    results = []
    for R in sorted(params["radii"]):
        _, sigma = ctx.weight.nu_sigma(R)
        beta = sigma ** -params["beta_exponent"]
        M1, M2 = corr.condition2_window(ctx.weight, R, beta)
        h_cut = corr.condition2_cutoff(ctx.weight, R, beta, q, A)
        seq = ctx.sequence(0, M2 + h_cut + 2)
        item = {
            "R": R,
            "sigma": sigma,
            "beta": beta,
            "condition1": corr.check_condition1(seq, ctx.weight, R, beta).to_dict(),
            "condition2": corr.check_condition2(seq, ctx.weight, R, beta, p, q, A).to_dict(),
        }
        if ctx.multiplier.kind is MultiplierKind.QUADRATIC:
            item["diophantine_sum"] = corr.diophantine_sum(
                ctx.multiplier.alpha, beta, p, h_cut, ctx.multiplier.alpha_lo
            )
        if params.get("eps_model"):
            eps1, eps2 = EPS_MODELS[params["eps_model"]]
            report = corr.check_no_gap_conditions(seq, ctx.weight, R, beta, q, eps1, eps2)
            item["no_gap"] = report.to_dict()
        results.append(item)
    artefact = _json(ctx, entry, "_conditions.json", {"results": results})
    summary = {
        "radii": len(results),
        "max_condition1_ratio": max(r["condition1"]["ratio"] for r in results),
        "max_condition2_ratio": max(r["condition2"]["ratio"] for r in results),
    }
    return ResultadoExperimento(summary, [artefact])


# ---------------------------------------------------------------------------
# Transporte y retículo
# ---------------------------------------------------------------------------

def _random_disks(rng, count, r_max, box):
    out = []
    for _ in range(count):
        x, y = rng.uniform(-box, box, 2)
        out.append(Disk(float(rng.uniform(0.5, max(r_max, 0.5 + 1e-9))), complex(x, y)))
    return out


def transport(ctx, entry):
    """Menor τ de las desigualdades de transporte sobre una familia de discos."""
    params = entry["params"]
    rng = _rng(ctx, entry)
    if params.get("disks"):
        disks = [region_from_dict(d) for d in params["disks"]]
    else:
        disks = _random_disks(rng, params["count"], params["r_max"], params["center_box"])
    tau_max = params.get("tau_max", ctx.constantes["transport_tau_max"])
    if params["measure"] == "lattice":
        explicit = entry.get("gauge")
        gauge = RadialGauge.constant(math.sqrt(2.0)) if explicit is None else ctx.gauge(entry)
        report = transport_check(disks, lattice_count, gauge, reference=lattice_area, tau_max=tau_max)
    else:
        gauge = ctx.gauge(entry)
        domain = max(abs(d.center) + d.r for d in disks)
        domain += tau_max * gauge.rho(domain) * 2
        spec = ctx.series(domain)

        def counter(region):
            return count_region(spec, region, ctx.min_samples).count

        report = transport_check(
            disks, counter, gauge, weight=ctx.weight, tau_max=tau_max, domain_radius=domain
        )
    rows = [{"region": label, "count": count, "mass": mass} for label, count, mass in report.rows]
    artefactos = [
        _csv(ctx, entry, "_family.csv", ["region", "count", "mass"], rows),
        _json(ctx, entry, "_transport.json", report.to_dict()),
    ]
    summary = {**report.to_dict(), "measure": params["measure"], "finite": report.finite}
    return ResultadoExperimento(summary, artefactos)


def _random_lattice_regions(rng, count, r_max):
    regions = []
    for i in range(count):
        x, y = rng.uniform(-10.0, 10.0, 2)
        if i % 2 == 0:
            regions.append(Disk(float(rng.uniform(1e-3, r_max)), complex(x, y)))
        else:
            w, h = rng.uniform(1e-3, 2 * r_max, 2)
            regions.append(Rectangle(float(x), float(x + w), float(y), float(y + h)))
    return regions


def lattice_baseline(ctx, entry):
    """Tabla de Gauss: |#(ℤ²∩K) - m(K)| frente a la √2-vecindad de ∂K."""
    params = entry["params"]
    if params.get("regions"):
        regions = [region_from_dict(r) for r in params["regions"]]
    else:
        regions = _random_lattice_regions(_rng(ctx, entry), params["count"], params["r_max"])
    checks = ctx.map(gauss_lattice_check, regions)
    rows = [{"region": region.label(), **check.to_dict()} for region, check in zip(regions, checks)]
    columns = ["region", "count", "area", "delta", "bound", "pass"]
    artefact = _csv(ctx, entry, "_lattice.csv", columns, rows)
    summary = {
        "regions": len(rows),
        "passed": sum(row["pass"] for row in rows),
        "all_pass": all(row["pass"] for row in rows),
    }
    return ResultadoExperimento(summary, [artefact])


EXPERIMENTS = {
    "zero_count_sweep": zero_count_sweep,
    "sector_equidist": sector_equidist,
    "local_disks": local_disks,
    "correlation_suite": correlation_suite,
    "spectral_suite": spectral_suite,
    "weyl_scan": weyl_scan,
    "condition_check": condition_check,
    "transport_check": transport,
    "lattice_baseline": lattice_baseline,
}
