"""FastAPI service wrapping the verification package.

Each endpoint delegates to a plain handler function; the CLI calls the same
handlers in process, so the HTTP layer adds no logic of its own.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from . import schemas
from .errors import QDilogError
from .quiver import HORIZONTAL, VERTICAL, square_product
from .roots import all_roots, canonical_order, order_matrix
from .strata import (
    KostantPartition,
    LineQuiver,
    enumerate_strata,
    normal_form,
    strata_table,
)
from .verify import (
    Verdict,
    betti_table,
    check_55_keller,
    check_pentagon,
    check_theorem_mt,
    coefficient_crosscheck,
    dt_invariant,
)

_AXES = {HORIZONTAL: HORIZONTAL, VERTICAL: VERTICAL, "h": HORIZONTAL, "v": VERTICAL}


def _axis(name: str) -> str:
    try:
        return _AXES[name.lower()]
    except KeyError:
        raise ValueError(f"axis must be horizontal or vertical, got {name!r}")


def _verdict_model(v: Verdict) -> schemas.VerdictModel:
    return schemas.VerdictModel.model_validate(v.to_json())


def _parse_orders(spec: str) -> int:
    if spec == "canonical":
        return 0
    if spec.startswith("random:"):
        count = int(spec.split(":", 1)[1])
        if count < 0:
            raise ValueError("random order count must be non-negative")
        return count
    raise ValueError(f"orders must be 'canonical' or 'random:<count>', got {spec!r}")


def handle_verify_mt(req: schemas.VerifyMTRequest) -> schemas.VerdictModel:
    verdict = check_theorem_mt(
        req.n,
        req.nprime,
        tuple(req.box),
        req.window,
        random_orders=_parse_orders(req.orders),
        seed=req.seed,
    )
    return _verdict_model(verdict)


def handle_pentagon(req: schemas.PentagonRequest) -> schemas.VerdictModel:
    if len(req.box) != 2:
        raise ValueError("pentagon box needs exactly two entries")
    return _verdict_model(check_pentagon(tuple(req.box), req.window))


def handle_keller55(req: schemas.Keller55Request) -> schemas.VerdictModel:
    if len(req.gamma) != 4:
        raise ValueError("keller55 needs gamma of length 4")
    g1, g2, g3, g4 = req.gamma
    return _verdict_model(check_55_keller(g1, g2, g3, g4, req.window))


def handle_crosscheck(req: schemas.CrosscheckRequest) -> schemas.VerdictModel:
    verdict = coefficient_crosscheck(
        req.n, req.nprime, tuple(req.gamma), _axis(req.axis), req.window
    )
    return _verdict_model(verdict)


def handle_dt(req: schemas.DTRequest) -> schemas.DTResponse:
    verdict, elem = dt_invariant(req.n, req.nprime, tuple(req.box), req.window)
    return schemas.DTResponse(
        verdict=_verdict_model(verdict),
        element=schemas.AlgebraElementModel.model_validate(elem.to_json()),
    )


def handle_betti(req: schemas.BettiRequest) -> schemas.BettiResponse:
    gq = square_product(req.n, req.nprime)
    table = betti_table(gq, tuple(req.gamma), req.window)
    return schemas.BettiResponse.model_validate(table.to_json())


def handle_strata(req: schemas.StrataRequest) -> schemas.StrataResponse:
    gq = square_product(req.n, req.nprime)
    gamma = tuple(req.gamma)
    axes = (
        (HORIZONTAL, VERTICAL)
        if req.axis == "both"
        else (_axis(req.axis),)
    )
    rows = []
    counts = {
        axis: len(enumerate_strata(gq, gamma, axis))
        for axis in (HORIZONTAL, VERTICAL)
    }
    for axis in axes:
        tag = "H" if axis == HORIZONTAL else "V"
        table = strata_table(gq, gamma, axis)
        for idx, row in enumerate(table, start=1):
            mults = [
                [[k, l, m] for (k, l), m in kp.items()] for kp in row.stratum.parts
            ]
            rows.append(
                schemas.StratumRowModel(
                    id=f"{tag}{idx}",
                    axis=axis,
                    label=row.stratum.label(),
                    multiplicities=mults,
                    codim=row.codim,
                    w=row.w,
                    poincare=row.poincare,
                )
            )
    return schemas.StrataResponse(
        gamma=list(gamma),
        horizontal_count=counts[HORIZONTAL],
        vertical_count=counts[VERTICAL],
        rows=rows,
    )


def handle_roots(req: schemas.RootsRequest) -> schemas.RootsResponse:
    gq = square_product(req.n, req.nprime)
    axis = _axis(req.axis)
    order = canonical_order(gq, axis)
    matrices = {}
    for line in range(1, gq.line_count(axis) + 1):
        grid = order_matrix(gq, line, axis)
        matrices[str(line)] = [
            [r.label() if r is not None else None for r in row] for row in grid
        ]
    return schemas.RootsResponse(
        axis=axis,
        count=len(all_roots(gq, axis)),
        order=[schemas.RootModel.model_validate(r.to_json()) for r in order.sequence],
        rho_matrices=matrices,
    )


def handle_normal_form(req: schemas.NormalFormRequest) -> schemas.NormalFormResponse:
    line = LineQuiver.from_string(req.orientation)
    if len(req.gamma) != line.length:
        raise ValueError("gamma length must match the orientation length + 1")
    mult = []
    for entry in req.kostant:
        if len(entry) != 3:
            raise ValueError("kostant entries are [k, l, multiplicity]")
        k, l, m = entry
        mult.append(((k, l), m))
    kp = KostantPartition(line, tuple(mult))
    if kp.gamma() != tuple(req.gamma):
        raise ValueError(
            f"kostant partition sums to {kp.gamma()}, not gamma {tuple(req.gamma)}"
        )
    nf = normal_form(line, kp)
    return schemas.NormalFormResponse(
        orientation=req.orientation,
        gamma=list(req.gamma),
        arrows=[list(a) for a in line.arrows()],
        matrices=[[list(row) for row in mat] for mat in nf.matrices],
    )


def handle_quiver(req: schemas.QuiverRequest) -> schemas.QuiverResponse:
    gq = square_product(req.n, req.nprime)
    return schemas.QuiverResponse.model_validate(gq.to_json())


app = FastAPI(
    title="qdilog",
    description="Exact quantum dilogarithm identity verification for "
    "square products of type-A quivers.",
)


def _wrap(handler, req):
    try:
        return handler(req)
    except (ValueError, QDilogError) as exc:
        raise HTTPException(status_code=422, detail=str(exc))


@app.post("/verify/mt", response_model=schemas.VerdictModel)
def verify_mt(req: schemas.VerifyMTRequest):
    return _wrap(handle_verify_mt, req)


@app.post("/verify/pentagon", response_model=schemas.VerdictModel)
def verify_pentagon(req: schemas.PentagonRequest):
    return _wrap(handle_pentagon, req)


@app.post("/verify/keller55", response_model=schemas.VerdictModel)
def verify_keller55(req: schemas.Keller55Request):
    return _wrap(handle_keller55, req)


@app.post("/verify/crosscheck", response_model=schemas.VerdictModel)
def verify_crosscheck(req: schemas.CrosscheckRequest):
    return _wrap(handle_crosscheck, req)


@app.post("/dt", response_model=schemas.DTResponse)
def dt(req: schemas.DTRequest):
    return _wrap(handle_dt, req)


@app.post("/betti", response_model=schemas.BettiResponse)
def betti(req: schemas.BettiRequest):
    return _wrap(handle_betti, req)


@app.post("/strata", response_model=schemas.StrataResponse)
def strata(req: schemas.StrataRequest):
    return _wrap(handle_strata, req)


@app.post("/roots", response_model=schemas.RootsResponse)
def roots(req: schemas.RootsRequest):
    return _wrap(handle_roots, req)


@app.post("/normal-form", response_model=schemas.NormalFormResponse)
def normal_form_endpoint(req: schemas.NormalFormRequest):
    return _wrap(handle_normal_form, req)


@app.post("/quiver", response_model=schemas.QuiverResponse)
def quiver(req: schemas.QuiverRequest):
    return _wrap(handle_quiver, req)


@app.get("/")
def root():
    return {"service": "qdilog", "endpoints": sorted(r.path for r in app.routes)}
