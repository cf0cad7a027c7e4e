"""
Storage Service Module

Provides centralized service for handling all file operations.
Handles circuit, structured-polynomial and graph inputs, report outputs and
the perfect-hash-family cache.

"""

import os
import tempfile
from typing import List, Optional, Sequence, Tuple

import orjson
from tenacity import retry, retry_if_exception_type, stop_after_attempt, wait_fixed

from .config import settings
from .errors import SerializationError, UsageError
from .logger import storage_logger as logger


class StorageService:
    """Centralized service for handling all file operations"""

    def __init__(self, phf_dir: Optional[str] = None, reports_dir: Optional[str] = None):
        self.phf_dir = phf_dir or settings.PHF_CACHE_DIR
        self.reports_dir = reports_dir or settings.REPORTS_DIR

        # Ensure directories exist
        for directory in [self.phf_dir, self.reports_dir]:
            os.makedirs(directory, exist_ok=True)

    # --- inputs -----------------------------------------------------------

    def read_bytes(self, path: str) -> bytes:
        try:
            with open(path, "rb") as f:
                return f.read()
        except OSError as e:
            raise UsageError(f"cannot read {path}: {e.strerror}") from None

    def load_circuit(self, path: str):
        from ..circuit.parser import parse_circuit
        return parse_circuit(self.read_bytes(path))

    def save_circuit(self, circuit, path: str) -> str:
        from ..circuit.parser import serialize_circuit
        return self._save_bytes(serialize_circuit(circuit), path)

    def load_structured(self, path: str):
        from ..circuit.structured import parse_structured
        return parse_structured(self.read_bytes(path))

    def save_structured(self, sp, path: str) -> str:
        from ..circuit.structured import serialize_structured
        return self._save_bytes(serialize_structured(sp), path)

    def load_graph(self, path: str):
        from ..applications.graph import parse_graph
        return parse_graph(self.read_bytes(path))

    def save_graph(self, graph, path: str) -> str:
        from ..applications.graph import serialize_graph
        return self._save_bytes(serialize_graph(graph), path)

    # --- reports ----------------------------------------------------------

    def save_report(self, report, path: Optional[str] = None) -> str:
        """Write a report (pydantic model) as indented JSON"""
        if path is None:
            path = os.path.join(self.reports_dir, f"{report.tester}-{report.config.get('seed', 'noseed')}.json")
        return self._save_bytes(report.to_json(), path)

    # --- perfect hash family cache ------------------------------------------

    def phf_cache_path(self, n: int, k: int) -> str:
        return os.path.join(self.phf_dir, f"phf-n{k}-{n}.txt")

    @retry(
        stop=stop_after_attempt(3),
        wait=wait_fixed(0.05),
        retry=retry_if_exception_type(OSError),
        reraise=True,
    )
    def _read_cache(self, path: str) -> str:
        with open(path, "r", encoding="utf-8") as f:
            return f.read()

    def load_phf(self, n: int, k: int) -> Optional[List[Tuple[int, ...]]]:
        """Cached colorings for (n, k), or None when absent or unreadable"""
        path = self.phf_cache_path(n, k)
        if not os.path.exists(path):
            return None
        try:
            text = self._read_cache(path)
            functions = [tuple(int(c) for c in line.split()) for line in text.splitlines() if line.strip()]
        except (OSError, ValueError) as e:
            logger.warning(f"Ignoring unreadable hash-family cache {path}: {str(e)}")
            return None
        if not functions or any(len(f) != n or any(c < 0 or c >= k for c in f) for f in functions):
            logger.warning(f"Ignoring malformed hash-family cache {path}")
            return None
        logger.debug(f"Loaded {len(functions)} colorings from {path}")
        return functions

    def save_phf(self, n: int, k: int, functions: Sequence[Sequence[int]]) -> str:
        text = "\n".join(" ".join(str(c) for c in f) for f in functions) + "\n"
        return self._save_bytes(text.encode("utf-8"), self.phf_cache_path(n, k), atomic=True)

    # --- helpers ----------------------------------------------------------

    def _save_bytes(self, data: bytes, filepath: str, atomic: bool = False) -> str:
        """Save bytes to file, optionally through a temporary file and rename"""
        try:
            directory = os.path.dirname(os.path.abspath(filepath))
            os.makedirs(directory, exist_ok=True)
            if atomic:
                fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-")
                with os.fdopen(fd, "wb") as f:
                    f.write(data)
                os.replace(tmp, filepath)
            else:
                with open(filepath, "wb") as f:
                    f.write(data)
            logger.info(f"Saved data to {filepath}")
            return filepath
        except OSError as e:
            logger.error(f"Error saving to {filepath}: {str(e)}")
            raise SerializationError(f"cannot write {filepath}: {e.strerror}") from e


def dumps(payload) -> bytes:
    """Indented JSON with sorted keys and a trailing newline"""
    return orjson.dumps(payload, option=orjson.OPT_INDENT_2 | orjson.OPT_SORT_KEYS | orjson.OPT_APPEND_NEWLINE
                        | orjson.OPT_SERIALIZE_NUMPY)
