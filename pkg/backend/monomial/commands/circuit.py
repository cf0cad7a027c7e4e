"""
Circuit Commands Module

test-circuit and oracle: decide degree-k p-monomials of a circuit file.

Key Features:
- rand: randomized group-algebra tester for any circuit
- det: deterministic tester for formulas
- oracle: brute-force expansion, printed next to the testers' verdicts
"""

from typing import Dict

from ..circuit.evaluator import pad_degree
from ..circuit.expansion import degree_bound, expand_oracle, has_p_monomial_oracle
from ..circuit.models import Circuit
from ..schemas import RunConfig, TestReport
from ..services.derandomized_tester import dt_mlm
from ..services.randomized_tester import rt_mlm
from ..utils.errors import MonomialError
from ..utils.logger import cli_logger as logger
from ..utils.storage import StorageService
from .common import rt_config

EXPANSION_PRINT_LIMIT = 64


def load_circuit(cfg: RunConfig, storage: StorageService) -> Circuit:
    circuit = storage.load_circuit(cfg.inputs[0])
    if cfg.pad:
        circuit = pad_degree(circuit, cfg.k)
    logger.info(f"loaded {cfg.inputs[0]}: {circuit.size} gates, {circuit.n} variables, "
                f"formula={circuit.is_formula}")
    return circuit


def oracle_report(circuit: Circuit, cfg: RunConfig) -> TestReport:
    """Expansion-oracle verdict with the smallest witness"""
    table = expand_oracle(circuit, cfg.p)
    found, witness = has_p_monomial_oracle(table, cfg.p, cfg.k)
    stats: Dict = {"monomials": len(table), "degree_bound": degree_bound(circuit)}
    if len(table) <= EXPANSION_PRINT_LIMIT:
        stats["expansion"] = table.format(circuit.variables)
    return TestReport(
        answer="yes" if found else "no",
        tester="expand_oracle",
        config={"p": cfg.p, "k": cfg.k},
        witness=witness.format(circuit.variables) if witness is not None else None,
        stats=stats,
    )


def cmd_test_circuit(cfg: RunConfig, storage: StorageService) -> TestReport:
    """
    Run the tester selected by --mode on a circuit file.

    Raises:
        UsageError: --mode det on a circuit that is not a formula
        PreconditionError: degree bound below k without --pad
    """
    circuit = load_circuit(cfg, storage)
    if cfg.mode == "rand":
        return rt_mlm(circuit, rt_config(cfg))
    if cfg.mode == "det":
        return dt_mlm(circuit, cfg.p, cfg.k, threads=cfg.threads, storage=storage, engine=cfg.engine,
                      mem_mb=cfg.mem_mb)

    report = oracle_report(circuit, cfg)
    verdicts = {}
    try:
        verdicts["rt_mlm"] = rt_mlm(circuit, rt_config(cfg)).answer
        if circuit.is_formula:
            verdicts["dt_mlm"] = dt_mlm(circuit, cfg.p, cfg.k, threads=cfg.threads, storage=storage,
                                         mem_mb=cfg.mem_mb).answer
    except MonomialError as e:
        logger.warning(f"tester skipped in oracle mode: {str(e)}")
        verdicts["error"] = str(e)
    report.stats["testers"] = verdicts
    report.stats["agree"] = all(v == report.answer for key, v in verdicts.items() if key != "error")
    return report


def cmd_oracle(cfg: RunConfig, storage: StorageService) -> TestReport:
    """Expansion oracle alone"""
    return oracle_report(load_circuit(cfg, storage), cfg)
