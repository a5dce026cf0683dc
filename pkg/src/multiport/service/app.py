"""HTTP service exposing circuit generation, verification and simulation.

All domain logic lives in the core package; endpoints translate between
pydantic models and the library types, and map ValueError (invalid
family, dimension, spec) to HTTP 400.
"""

from __future__ import annotations

import numpy as np
from fastapi import FastAPI, HTTPException

from .. import generators, netlist, verify
from ..circuit import circuit_matrix, depth, element_count
from ..experiments import run_experiment
from .schemas import (
    CheckModel,
    HistogramBin,
    HistogramRequest,
    HistogramResponse,
    MatrixRequest,
    MatrixResponse,
    NetlistRequest,
    NetlistResponse,
    SimulateRequest,
    SimulateResponse,
    StatsModel,
    VerifyRequest,
    VerifyResponse,
)


def _build_or_400(family: str, d: int, solution: int | None):
    try:
        return generators.build(family, d, solution=solution)
    except ValueError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc


def create_app() -> FastAPI:
    app = FastAPI(title="multiport", version=netlist.GENERATOR_VERSION)

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok"}

    @app.post("/netlist", response_model=NetlistResponse)
    def make_netlist(req: NetlistRequest) -> NetlistResponse:
        circuit = _build_or_400(req.family, req.d, req.solution)
        metadata = {"family": req.family, "d": req.d}
        if req.solution is not None:
            metadata["solution"] = req.solution
        return NetlistResponse(
            document=netlist.serialize_circuit(circuit, metadata),
            element_count=element_count(circuit),
            depth=depth(circuit),
        )

    @app.post("/matrix", response_model=MatrixResponse)
    def make_matrix(req: MatrixRequest) -> MatrixResponse:
        circuit = _build_or_400(req.family, req.d, req.solution)
        matrix = circuit_matrix(circuit)
        residual = float(
            np.max(np.abs(matrix.conj().T @ matrix - np.eye(circuit.d)))
        )
        return MatrixResponse(
            d=circuit.d,
            real=matrix.real.tolist(),
            imag=matrix.imag.tolist(),
            unitarity_residual=residual,
        )

    @app.post("/verify", response_model=VerifyResponse)
    def run_checks(req: VerifyRequest) -> VerifyResponse:
        checks = verify.run_verification(max_dim=req.max_dim)
        return VerifyResponse(
            passed=verify.all_passed(checks),
            checks=[CheckModel.from_result(c) for c in checks],
        )

    @app.post("/simulate", response_model=SimulateResponse)
    def simulate(req: SimulateRequest) -> SimulateResponse:
        try:
            result = run_experiment(req.to_spec())
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        return SimulateResponse(
            spec=req,
            stats=StatsModel.from_stats(result.stats),
            results_csv=netlist.render_results_csv(result),
            fidelities=(
                [float(f) for f in result.fidelities]
                if req.include_fidelities
                else None
            ),
        )

    @app.post("/histogram", response_model=HistogramResponse)
    def histogram(req: HistogramRequest) -> HistogramResponse:
        try:
            rows = netlist.histogram_rows(np.asarray(req.values, dtype=float))
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        return HistogramResponse(
            bins=[HistogramBin(bin_lower=lo, bin_width=w, count=n) for lo, w, n in rows]
        )

    return app


app = create_app()
