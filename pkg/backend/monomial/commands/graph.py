"""
Graph Commands Module

kpath: k-path detection through the p(G, k) reduction.
kclique-gen: write the f(G, k) circuit of the k-clique reduction.
"""

import sys
from typing import Optional

from ..applications.encoders import encode_kclique, encode_kpath
from ..applications.oracles import path_oracle
from ..circuit.expansion import degree_bound
from ..circuit.parser import serialize_circuit
from ..schemas import RunConfig, TestReport
from ..services.derandomized_tester import dt_mlm
from ..services.randomized_tester import rt_mlm
from ..utils.errors import ConfigurationError
from ..utils.logger import cli_logger as logger
from ..utils.storage import StorageService
from .common import rt_config


def check_kpath_modulus(p: int, c: int) -> None:
    """Walks that revisit a vertex carry an exponent of at least 2c; they vanish only when 2c >= p > c"""
    if not c < p <= 2 * c:
        raise ConfigurationError(f"k-path detection with c={c} needs c < p <= 2c, got p={p}")


def cmd_kpath(cfg: RunConfig, storage: StorageService) -> TestReport:
    """
    Decide whether the graph has a simple path on k vertices (all vertices with --hamiltonian).

    Raises:
        ConfigurationError: p outside (c, 2c]
    """
    g = storage.load_graph(cfg.inputs[0])
    k = g.m if cfg.hamiltonian else cfg.k
    check_kpath_modulus(cfg.p, cfg.c)
    target = cfg.c * k
    logger.info(f"kpath: m={g.m}, |E|={len(g.edges)}, k={k}, c={cfg.c}, target degree {target}")

    if cfg.mode == "oracle":
        found = path_oracle(g, k)
        report = TestReport(answer="yes" if found else "no", tester="path_oracle",
                            config={"k": k}, stats={})
    elif k < 1:
        report = TestReport(answer="no", tester="kpath", config={"k": k}, stats={"reason": "empty graph"})
    else:
        circuit = encode_kpath(g, k, cfg.c)
        if degree_bound(circuit) < target:
            # p(G, k) is homogeneous of degree ck, so a smaller bound means it is zero
            report = TestReport(answer="no", tester="kpath", config={"p": cfg.p, "k": k, "c": cfg.c},
                                stats={"reason": "no walk on k vertices"})
        elif cfg.mode == "det":
            report = dt_mlm(circuit, cfg.p, target, threads=cfg.threads, storage=storage, mem_mb=cfg.mem_mb)
        else:
            # every walk passes through its own Mul gates, so the two directions of a path keep distinct tags
            report = rt_mlm(circuit, rt_config(cfg, k=target).model_copy(update={"tags": "mul"}))
        report.stats["gates"] = circuit.size
    report.stats.update({"vertices": g.m, "edges": len(g.edges), "path_vertices": k})
    return report


def cmd_kclique_gen(cfg: RunConfig, storage: StorageService) -> Optional[TestReport]:
    """Write f(G, k) to -o, or to stdout without it"""
    g = storage.load_graph(cfg.inputs[0])
    circuit = encode_kclique(g, cfg.k)
    if cfg.output:
        path = storage.save_circuit(circuit, cfg.output)
        sys.stderr.write(f"wrote {circuit.size}-gate circuit over {circuit.n} edge variables to {path}\n")
    else:
        sys.stdout.buffer.write(serialize_circuit(circuit))
        sys.stdout.flush()
    logger.info(f"kclique-gen: k={cfg.k}, degree {cfg.k * (cfg.k - 1) // 2}, {circuit.size} gates")
    return None
