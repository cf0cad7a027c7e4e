"""
Schemas Module

This module defines Pydantic models for run configuration and tester reports.

Key Features:
- Input validation for tester and CLI configuration
- Report serialization to JSON through orjson
- Canonical report form without wall-clock fields for reproducibility
"""

from typing import Any, Dict, List, Optional, Union

from pydantic import BaseModel, Field, root_validator, validator

from .algebra.field import is_prime
from .utils.config import settings
from .utils.storage import dumps

PIT_METHODS = ["eval", "modpoly"]
ENGINES = ["auto", "naive", "ntt"]
TAG_SITES = ["input", "mul"]
CIRCUIT_MODES = ["rand", "det", "oracle"]
STRUCTURED_MODES = ["structured-bb", "structured-rand", "structured-enum", "pisigma", "oracle"]
SUBCOMMANDS = ["test-circuit", "test-structured", "kpath", "kclique-gen", "oracle", "bench"]


def default_dimension(p: int, k: int) -> int:
    """d = k + ceil(log_p k) + 1, computed with integers; k = 1 gives 2"""
    if k <= 1:
        return 2
    e = 0
    while p ** e < k:
        e += 1
    return k + e + 1


class RtConfig(BaseModel):
    """Configuration of the randomized group-algebra tester"""
    p: int
    k: int
    d: Optional[int] = None
    trials: int = settings.DEFAULT_TRIALS
    pit: str = "eval"
    seed: Optional[int] = None
    threads: int = settings.DEFAULT_THREADS
    mem_mb: Optional[int] = None
    engine: str = "auto"
    tags: str = "input"

    @validator("p")
    def validate_prime(cls, v):
        """Validate that the modulus is prime."""
        if not is_prime(v):
            raise ValueError(f"p must be prime, got {v}")
        return v

    @validator("k", "trials", "threads")
    def validate_positive(cls, v):
        if v < 1:
            raise ValueError("must be at least 1")
        return v

    @validator("pit")
    def validate_pit(cls, v):
        if v not in PIT_METHODS:
            raise ValueError(f"pit must be one of {PIT_METHODS}")
        return v

    @validator("engine")
    def validate_engine(cls, v):
        if v not in ENGINES:
            raise ValueError(f"engine must be one of {ENGINES}")
        return v

    @validator("tags")
    def validate_tags(cls, v):
        if v not in TAG_SITES:
            raise ValueError(f"tags must be one of {TAG_SITES}")
        return v

    @validator("seed")
    def validate_seed(cls, v):
        if v is not None and not 0 <= v < 2 ** 64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        return v

    @root_validator(skip_on_failure=True)
    def set_dimension(cls, values):
        """Fill in the default algebra dimension."""
        if values.get("d") is None:
            values["d"] = default_dimension(values["p"], values["k"])
        elif values["d"] < 1:
            raise ValueError("d must be at least 1")
        return values


class TrialOutcome(BaseModel):
    """One trial (or one coloring, repetition or leaf batch) of a tester"""
    trial: int
    seed: Optional[int] = None
    verdict: bool
    micros: int = 0


class TestReport(BaseModel):
    """Answer of a tester together with the statistics needed to reproduce it"""
    __test__ = False

    answer: str
    tester: str
    trials: int = 0
    per_trial: List[TrialOutcome] = Field(default_factory=list)
    elapsed: float = 0.0
    config: Dict[str, Any] = Field(default_factory=dict)
    witness: Optional[str] = None
    stats: Dict[str, Any] = Field(default_factory=dict)

    @validator("answer")
    def validate_answer(cls, v):
        if v not in ("yes", "no"):
            raise ValueError("answer must be 'yes' or 'no'")
        return v

    @property
    def is_yes(self) -> bool:
        return self.answer == "yes"

    @property
    def exit_code(self) -> int:
        return 0 if self.is_yes else 1

    def to_dict(self, canonical: bool = False) -> Dict[str, Any]:
        payload = self.model_dump()
        if canonical:
            payload.pop("elapsed", None)
            for outcome in payload["per_trial"]:
                outcome.pop("micros", None)
        return payload

    def to_json(self) -> bytes:
        return dumps(self.to_dict())

    def canonical_json(self) -> bytes:
        """JSON without wall-clock fields; identical across re-runs with the same seed"""
        return dumps(self.to_dict(canonical=True))

    def to_text(self) -> str:
        lines = [f"answer: {self.answer}", f"tester: {self.tester}"]
        if self.trials:
            lines.append(f"trials: {self.trials}")
        if self.witness:
            lines.append(f"witness: {self.witness}")
        for key in sorted(self.stats):
            lines.append(f"{key}: {self.stats[key]}")
        if "seed" in self.config:
            lines.append(f"seed: {self.config['seed']}")
        lines.append(f"elapsed: {self.elapsed:.4f}s")
        return "\n".join(lines) + "\n"


class RunConfig(BaseModel):
    """Validated command-line run"""
    subcommand: str
    inputs: List[str] = Field(default_factory=list)
    p: int = 2
    k: Optional[int] = None
    mode: Optional[str] = None
    trials: int = settings.DEFAULT_TRIALS
    reps: Optional[Union[int, str]] = None
    seed: Optional[int] = None
    format: str = "text"
    threads: int = settings.DEFAULT_THREADS
    mem_mb: Optional[int] = None
    output: Optional[str] = None
    c: int = 1
    hamiltonian: bool = False
    pad: bool = False
    pit: str = "eval"
    engine: str = "auto"
    tags: str = "input"
    generate: Optional[int] = None

    @validator("subcommand")
    def validate_subcommand(cls, v):
        if v not in SUBCOMMANDS:
            raise ValueError(f"subcommand must be one of {SUBCOMMANDS}")
        return v

    @validator("p")
    def validate_prime(cls, v):
        if not is_prime(v):
            raise ValueError(f"p must be prime, got {v}")
        return v

    @validator("pit")
    def validate_pit(cls, v):
        if v not in PIT_METHODS:
            raise ValueError(f"pit must be one of {PIT_METHODS}")
        return v

    @validator("engine")
    def validate_engine(cls, v):
        if v not in ENGINES:
            raise ValueError(f"engine must be one of {ENGINES}")
        return v

    @validator("tags")
    def validate_tags(cls, v):
        if v not in TAG_SITES:
            raise ValueError(f"tags must be one of {TAG_SITES}")
        return v

    @validator("format")
    def validate_format(cls, v):
        if v not in ("text", "json"):
            raise ValueError("format must be 'text' or 'json'")
        return v

    @validator("reps")
    def validate_reps(cls, v):
        if v is None or v == "auto":
            return v
        if isinstance(v, str):
            if not (v.isascii() and v.isdecimal()):
                raise ValueError("reps must be a positive integer or 'auto'")
            v = int(v)
        if v < 1:
            raise ValueError("reps must be at least 1")
        return v

    @validator("trials", "threads", "c")
    def validate_positive(cls, v):
        if v < 1:
            raise ValueError("must be at least 1")
        return v

    @root_validator(skip_on_failure=True)
    def validate_mode(cls, values):
        """Check that each subcommand gets the parameters it needs."""
        sub, mode = values["subcommand"], values.get("mode")
        if sub == "test-circuit":
            values["mode"] = mode = mode or "rand"
            if mode not in CIRCUIT_MODES:
                raise ValueError(f"test-circuit mode must be one of {CIRCUIT_MODES}")
        elif sub == "test-structured":
            values["mode"] = mode = mode or "structured-bb"
            if mode not in STRUCTURED_MODES:
                raise ValueError(f"test-structured mode must be one of {STRUCTURED_MODES}")
        elif sub == "kpath":
            values["mode"] = mode = mode or "rand"
            if mode not in CIRCUIT_MODES:
                raise ValueError(f"kpath mode must be one of {CIRCUIT_MODES}")
        needs_k = sub in ("test-circuit", "kpath", "kclique-gen", "oracle")
        if needs_k and values.get("k") is None and not values.get("hamiltonian"):
            raise ValueError(f"{sub} requires --k")
        if values.get("k") is not None and values["k"] < 1:
            raise ValueError("k must be at least 1")
        if sub == "test-structured" and mode == "pisigma" and values["c"] < 2:
            raise ValueError("pisigma mode requires --c of at least 2")
        if not values["inputs"]:
            raise ValueError(f"{sub} requires an input file")
        return values


class BenchRecord(BaseModel):
    """One timed tester run over a corpus instance"""
    instance: str
    tester: str
    k: int
    seconds: float = 0.0
    answer: Optional[str] = None
    explored: Optional[int] = None
    error: Optional[str] = None


class BenchReport(BaseModel):
    """Timing table and fitted exponential growth bases per tester"""
    records: List[BenchRecord] = Field(default_factory=list)
    growth: Dict[str, float] = Field(default_factory=dict)
    config: Dict[str, Any] = Field(default_factory=dict)

    def to_json(self) -> bytes:
        return dumps(self.model_dump())
