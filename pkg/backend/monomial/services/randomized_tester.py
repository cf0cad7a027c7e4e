"""
Randomized Tester Module

Randomized p-monomial detection for arithmetic circuits by substitution into
the group algebra Z_p[Z_p^d] followed by an identity test.

Key Features:
- Uniform nonzero substitution vectors, variable x_i -> (p-1)[v_i] + [0]
- Degree-graded evaluation so the answer concerns degree exactly k
- Independent, reproducible trials with early exit on the first yes
- Memory budget check before any table is allocated
"""

import time
from typing import List

import numpy as np

from ..algebra.field import ext_field_make, extension_degree_for
from ..algebra.group import GroupVector
from ..algebra.group_algebra import GroupAlgebraElement, substitution_element
from ..circuit.evaluator import augment_circuit
from ..circuit.expansion import degree_bound
from ..circuit.models import Circuit
from ..schemas import RtConfig, TestReport, TrialOutcome
from ..tasks.runner import run_parallel
from ..utils.config import settings
from ..utils.errors import PreconditionError, ResourceLimitError
from ..utils.logger import tester_logger as logger
from ..utils.rng import resolve_seed, trial_rng, trial_seed
from .identity_testing import identity_test_eval, identity_test_modpoly, modpoly_degree, tag_degree_bound


def sample_substitution(n: int, cfg: RtConfig, rng: np.random.Generator) -> List[GroupAlgebraElement]:
    """For each variable, (p-1)[v] + [0] with v uniform in Z_p^d minus the zero vector"""
    p, d = cfg.p, cfg.d
    indices = rng.integers(1, p ** d, size=n)
    return [substitution_element(GroupVector.from_index(int(i), p, d)) for i in indices]


def check_memory(p: int, d: int, ell: int, k: int, mem_mb=None) -> int:
    """Bytes needed for the graded tables of one evaluation; raises when over budget"""
    table = (p ** d) * ell * 8 * (k + 1)
    needed = 3 * table
    budget = settings.memory_budget_bytes(mem_mb)
    if needed > budget:
        raise ResourceLimitError(
            f"group-algebra tables need {needed // 2**20} MiB (p^d={p ** d}, l={ell}, k={k}); "
            f"budget is {budget // 2**20} MiB")
    return needed


def rt_mlm(c: Circuit, cfg: RtConfig) -> TestReport:
    """
    Decide whether the expansion of c has a degree-k p-monomial with nonzero
    coefficient mod p. A yes answer is always correct; a no answer errs with
    probability at most (3/8)^trials.
    """
    started = time.perf_counter()
    c.require_output()
    if degree_bound(c) < cfg.k:
        raise PreconditionError(f"circuit degree bound {degree_bound(c)} is below k={cfg.k}; pad the circuit")
    seed = resolve_seed(cfg.seed)
    ac = augment_circuit(c, sites=cfg.tags)

    field = None
    if cfg.pit == "eval":
        bound = tag_degree_bound(ac, cfg.k)
        field = ext_field_make(cfg.p, extension_degree_for(cfg.p, 6 * (bound + 1)))
        ell = field.ell
    else:
        ell = modpoly_degree(ac, cfg.p)
    check_memory(cfg.p, cfg.d, ell, cfg.k, cfg.mem_mb)
    logger.info(f"rt_mlm: substituting x_i -> ({cfg.p - 1})[v_i] + [0] in Z_{cfg.p}[Z_{cfg.p}^{cfg.d}], "
                f"{cfg.tags} tags, {cfg.pit} identity test, coefficient degree {ell}")

    def trial(t: int) -> TrialOutcome:
        rng = trial_rng(seed, t)
        subs = sample_substitution(c.n, cfg, rng)
        t0 = time.perf_counter()
        if field is not None:
            verdict = identity_test_eval(ac, subs, field, rng, degree=cfg.k, engine=cfg.engine)
        else:
            verdict = identity_test_modpoly(ac, subs, cfg.p, rng, degree=cfg.k, engine=cfg.engine)
        micros = int((time.perf_counter() - t0) * 1e6)
        logger.debug(f"trial {t}: {'nonzero' if verdict else 'zero'} in {micros} us")
        return TrialOutcome(trial=t, seed=trial_seed(seed, t), verdict=verdict, micros=micros)

    outcomes = run_parallel(trial, range(cfg.trials), cfg.threads, stop=lambda o: o.verdict)
    hit = next((o for o in outcomes if o.verdict), None)
    config = cfg.model_dump()
    config["seed"] = seed
    report = TestReport(
        answer="yes" if hit else "no",
        tester="rt_mlm",
        trials=len(outcomes),
        per_trial=outcomes,
        elapsed=time.perf_counter() - started,
        config=config,
        witness=f"trial {hit.trial} (seed {hit.seed})" if hit else None,
        stats={"d": cfg.d, "coefficient_degree": ell, "tags": ac.h, "gates": c.size},
    )
    logger.info(f"rt_mlm: {report.answer} after {report.trials} trial(s) in {report.elapsed:.3f}s")
    return report
