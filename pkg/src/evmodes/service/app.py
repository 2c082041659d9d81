"""Service entry points and the FastAPI application.

The run_* functions are plain request -> response calls; the CLI uses
them in-process and the HTTP layer is a thin wrapper around the same
functions, so both fronts produce identical payloads.
"""

from __future__ import annotations

import cmath

import numpy as np

from .. import __version__
from ..fields import (
    _stable_densities,
    eval_fields,
    integrated_transport,
    subluminality_sweep,
)
from ..propagator import (
    SpacetimeSeparation,
    asymptotic_fit,
    closed_form_report,
    compton_reach,
    correlation_quadrature,
)
from ..quadrature import QuadratureError
from ..verify import run_verification
from ..waveguide import WaveguideConfig, cutoff_frequency, make_mode, scatter_coeffs
from .schemas import (
    CheckPayload,
    ComparisonPayload,
    FieldsRequest,
    FieldsResponse,
    FitPayload,
    PropagatorRequest,
    PropagatorResponse,
    ScatterRequest,
    ScatterResponse,
    TablePayload,
    VelocityRequest,
    VelocityResponse,
    VelocitySummary,
    VerifyRequest,
    VerifyResponse,
)

__all__ = [
    "run_scatter", "run_velocity", "run_fields", "run_propagator",
    "run_verify", "create_app",
]


def _geometry_meta(config: WaveguideConfig) -> dict:
    return {
        "a": config.a,
        "b": config.b,
        "L": config.L,
        "kc_L": config.k_c * config.L,
        "omega_c": cutoff_frequency(config),
        "units": config.units.name,
    }


def run_scatter(req: ScatterRequest) -> ScatterResponse:
    config = req.geometry.to_config()
    omega_c = cutoff_frequency(config)
    rows = []
    for frac in req.frequencies.fractions():
        mode = make_mode(config, float(frac) * omega_c)
        co = scatter_coeffs(mode)
        rows.append([
            float(frac), mode.omega, mode.k, mode.beta,
            co.T.real, co.T.imag, co.T2, co.R2, co.T2 + co.R2,
            co.ln_abs_T, co.phase_T,
            co.A.real, co.A.imag, co.B.real, co.B.imag,
        ])
    table = TablePayload(
        columns=[
            "omega_over_omega_c", "omega", "k", "beta",
            "T_re", "T_im", "abs_T2", "abs_R2", "unitarity",
            "ln_abs_T", "phase_T",
            "A_re", "A_im", "B_re", "B_im",
        ],
        rows=rows,
        meta=_geometry_meta(config),
    )
    return ScatterResponse(table=table)


def run_velocity(req: VelocityRequest) -> VelocityResponse:
    config = req.geometry.to_config()
    omega_c = cutoff_frequency(config)
    c = config.units.c
    omega_fracs = req.frequencies.fractions()
    z_fracs = req.axial.fractions()

    sweep = subluminality_sweep(config, omega_fracs, z_fracs,
                                density=req.density, tolerance=req.tolerance,
                                threads=req.threads)
    rows = []
    for of in omega_fracs:
        mode = make_mode(config, float(of) * omega_c)
        co = scatter_coeffs(mode)
        for zf in z_fracs:
            tr = integrated_transport(mode, co, float(zf) * config.L, req.density)
            rows.append([float(of), float(zf), tr.P_z, tr.W, tr.v_bar,
                         tr.v_bar / c])
    meta = _geometry_meta(config)
    meta["density"] = req.density
    table = TablePayload(
        columns=["omega_over_omega_c", "z_over_L", "P_z", "W", "v_bar",
                 "v_bar_over_c"],
        rows=rows,
        meta=meta,
    )
    summary = VelocitySummary(
        density=sweep.density,
        max_ratio=sweep.max_ratio,
        argmax_omega_fraction=sweep.argmax_omega_fraction,
        argmax_z_fraction=sweep.argmax_z_fraction,
        passed=bool(sweep.passed),
        tolerance=sweep.tolerance,
    )
    return VelocityResponse(table=table, summary=summary)


def run_fields(req: FieldsRequest) -> FieldsResponse:
    config = req.geometry.to_config()
    omega_c = cutoff_frequency(config)
    mode = make_mode(config, req.omega_fraction * omega_c)
    co = scatter_coeffs(mode)
    xs = np.linspace(0.0, config.a, req.x_count)
    zs = np.linspace(0.0, config.L, req.z_count)

    rows = []
    for z in zs:
        z = float(z)
        sample = eval_fields(mode, co, xs, z, req.t, h0=req.h0)
        dens = _stable_densities(mode, co, xs, z, h0=req.h0)
        ey = np.atleast_1d(sample.E_y)
        hx = np.atleast_1d(sample.H_x)
        hz = np.atleast_1d(sample.H_z)
        sz = np.atleast_1d(dens.S_z)
        w = np.atleast_1d(dens.w)
        wv = np.atleast_1d(dens.w_variant)
        for i, x in enumerate(xs):
            rows.append([
                float(x), z,
                ey[i].real, ey[i].imag,
                hx[i].real, hx[i].imag,
                hz[i].real, hz[i].imag,
                float(sz[i]), float(w[i]), float(wv[i]),
            ])
    meta = _geometry_meta(config)
    meta["omega_over_omega_c"] = req.omega_fraction
    meta["t"] = req.t
    meta["h0"] = req.h0
    table = TablePayload(
        columns=["x", "z", "E_y_re", "E_y_im", "H_x_re", "H_x_im",
                 "H_z_re", "H_z_im", "S_z", "w_full", "w_variant"],
        rows=rows,
        meta=meta,
    )
    return FieldsResponse(table=table)


def run_propagator(req: PropagatorRequest) -> PropagatorResponse:
    omega_c = req.omega_c
    rows = []
    for axis_is_t, points in ((1.0, req.t_axis_points),
                              (0.0, req.z_axis_points)):
        for p in points:
            sep = (SpacetimeSeparation(p / omega_c, 0.0) if axis_is_t
                   else SpacetimeSeparation(0.0, p / omega_c))
            val = correlation_quadrature(sep, omega_c, tol=req.tol)
            rows.append([
                axis_is_t, float(p),
                val.G.real, val.G.imag, abs(val.G), cmath.phase(val.G),
                val.est_error,
                1.0 if compton_reach(sep, omega_c) else 0.0,
            ])
    table = TablePayload(
        columns=["axis_is_t", "omega_c_times_separation",
                 "G_re", "G_im", "abs_G", "arg_G", "est_error",
                 "compton_reach"],
        rows=rows,
        meta={"omega_c": omega_c, "tol": req.tol},
    )

    fits = []
    for direction in ("timelike", "spacelike"):
        ft = asymptotic_fit(omega_c, direction,
                            window=tuple(req.fit_window),
                            n_samples=req.fit_samples)
        fits.append(FitPayload(
            direction=ft.direction, exponent=ft.exponent, rate=ft.rate,
            log_amplitude=ft.log_amplitude, residual_rms=ft.residual_rms,
            ok=bool(ft.ok), n_samples=ft.n_samples,
            window=tuple(float(w) for w in ft.window),
            claimed_exponent=ft.claimed_exponent, claimed_rate=ft.claimed_rate,
        ))

    # the closed form needs strictly timelike points, so t = 0 stays out
    comparisons = []
    axis = tuple(p for p in req.t_axis_points if p > 0.0)
    for row in closed_form_report(omega_c,
                                  axis_points=axis,
                                  extra_points=tuple(req.comparison_pairs),
                                  tol=req.tol):
        comparisons.append(ComparisonPayload(
            omega_c_t=row.omega_c_t,
            omega_c_z=row.omega_c_z,
            quadrature_re=row.G_quadrature.real,
            quadrature_im=row.G_quadrature.imag,
            closed_form_re=row.G_closed_form.real,
            closed_form_im=row.G_closed_form.imag,
            est_error=row.est_error,
            abs_ratio=row.abs_ratio,
            phase_difference=row.phase_difference,
            abs_difference=row.abs_difference,
        ))
    return PropagatorResponse(table=table, fits=fits, closed_form=comparisons)


def run_verify(req: VerifyRequest) -> VerifyResponse:
    report = run_verification(req.to_settings())
    return VerifyResponse(
        passed=bool(report.passed),
        checks=[CheckPayload(name=c.name, passed=bool(c.passed),
                             measured=float(c.measured),
                             tolerance=float(c.tolerance), detail=c.detail)
                for c in report.checks],
        notes=list(report.notes),
        digest=report.digest,
    )


def create_app():
    from fastapi import FastAPI, Request
    from fastapi.responses import JSONResponse

    app = FastAPI(title="evmodes", version=__version__)

    @app.exception_handler(QuadratureError)
    async def _quadrature_failure(request: Request, exc: QuadratureError):
        return JSONResponse(status_code=500, content={
            "error": "numerical_failure", "message": str(exc)})

    @app.exception_handler(ValueError)
    async def _domain_error(request: Request, exc: ValueError):
        return JSONResponse(status_code=422, content={
            "error": "invalid_parameters", "message": str(exc)})

    @app.get("/health")
    async def health():
        return {"status": "ok", "version": __version__}

    @app.post("/scatter", response_model=ScatterResponse)
    async def scatter(req: ScatterRequest):
        return run_scatter(req)

    @app.post("/velocity", response_model=VelocityResponse)
    async def velocity(req: VelocityRequest):
        return run_velocity(req)

    @app.post("/fields", response_model=FieldsResponse)
    async def fields(req: FieldsRequest):
        return run_fields(req)

    @app.post("/propagator", response_model=PropagatorResponse)
    async def propagator(req: PropagatorRequest):
        return run_propagator(req)

    @app.post("/verify", response_model=VerifyResponse)
    async def verify(req: VerifyRequest):
        return run_verify(req)

    return app
