"""
Structured Commands Module

test-structured: multilinear-monomial testers for clause files.
"""

from ..circuit.structured import Shape, StructuredPoly
from ..schemas import RunConfig, TestReport
from ..services.structured_tester import (
    ProductInstance,
    bb_test,
    enum_test,
    enumerate_selections,
    narrow_test,
    pi_sigma_test,
)
from ..utils.logger import cli_logger as logger
from ..utils.storage import StorageService


def product_instance(sp: StructuredPoly) -> ProductInstance:
    """Product files split at the separator; other files are an F1 with an empty F2"""
    if sp.shape == Shape.PRODUCT:
        return ProductInstance.from_structured(sp)
    return ProductInstance(sp.factors, (), sp.variables)


def cmd_test_structured(cfg: RunConfig, storage: StorageService) -> TestReport:
    """
    Run the structured tester selected by --mode.

    Raises:
        CircuitSyntaxError: malformed clause file, with its line
        ShapeError: clause bounds violated for the selected tester
    """
    sp = storage.load_structured(cfg.inputs[0])
    logger.info(f"loaded {cfg.inputs[0]}: {sp.shape.value}, m={sp.m}, k={sp.k}, t={sp.t}")
    if cfg.mode == "pisigma":
        return pi_sigma_test(sp, cfg.c)
    if cfg.mode == "oracle":
        found, witness = enumerate_selections(sp)
        return TestReport(
            answer="yes" if found else "no",
            tester="enumerate_selections",
            config={"m": sp.m, "k": sp.k},
            witness=witness.format(sp.variables) if witness is not None else None,
            stats={"clauses": len(sp.clauses)},
        )
    inst = product_instance(sp)
    if cfg.mode == "structured-bb":
        return bb_test(inst, threads=cfg.threads)
    if cfg.mode == "structured-enum":
        return enum_test(inst, threads=cfg.threads)
    reps = None if cfg.reps in (None, "auto") else int(cfg.reps)
    return narrow_test(inst, reps=reps, threads=cfg.threads, seed=cfg.seed)
