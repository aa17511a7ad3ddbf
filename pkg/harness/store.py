import hashlib
import logging
from datetime import datetime, timezone
from pathlib import Path
from typing import List, Optional

from config import settings

logger = logging.getLogger(__name__)


def digest(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()[:16]


class TraceStore:
    """
    Local store for instance files and run traces.

    - Append only: an existing key is never rewritten.
    - Path format: YYYY/MM/DD/{digest}.json under the store root.
    """

    def __init__(self, root: Optional[Path] = None):
        self.root = Path(root or settings.STORE_DIR)
        self._ensure_root()
        logger.info(f"TraceStore initialized | root={self.root}")

    def _ensure_root(self):
        try:
            self.root.mkdir(parents=True, exist_ok=True)
        except OSError as e:
            logger.error(f"Store root error: {e}")
            raise

    @staticmethod
    def key_for(data: bytes, when: Optional[datetime] = None) -> str:
        when = when or datetime.now(timezone.utc)
        return f"{when:%Y/%m/%d}/{digest(data)}.json"

    def put(self, data: bytes, key: Optional[str] = None) -> Optional[str]:
        """
        Store a document.

        Args:
            data: serialized JSON bytes
            key: explicit key, defaults to today's digest path

        Returns:
            The key, or None if the write failed
        """
        key = key or self.key_for(data)
        path = self.root / key
        if path.exists():
            logger.debug(f"Already stored: {key}")
            return key
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_bytes(data)
            logger.info(f"Stored: {key} ({len(data):,} bytes)")
            return key
        except OSError as e:
            logger.error(f"Store failed: {e}")
            return None

    def get(self, key: str) -> bytes:
        try:
            return (self.root / key).read_bytes()
        except OSError as e:
            logger.error(f"Store get failed: {e}")
            return b""

    def exists(self, key: str) -> bool:
        return (self.root / key).exists()

    def list_keys(self, prefix: str = "") -> List[str]:
        """All keys, or those under a date prefix such as "2026/02"."""
        base = self.root / prefix if prefix else self.root
        if not base.exists():
            return []
        return sorted(str(p.relative_to(self.root)).replace("\\", "/") for p in base.rglob("*.json"))
