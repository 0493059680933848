"""CSV result files with a metadata header line."""

import io
import sys
from pathlib import Path
from typing import Optional, Union

import pandas as pd
from pydantic import BaseModel, Field

from app.core.logger import logger

FLOAT_FORMAT = "%.12g"


class ResultMetadata(BaseModel):
    """First line of every result file: ``# seed=...,algorithm=...,config=...``."""

    seed: int = Field(..., ge=0)
    algorithm: str
    config: str = Field(..., description="SHA-256 fingerprint of the run configuration")

    def header_line(self) -> str:
        return f"# seed={self.seed},algorithm={self.algorithm},config={self.config}\n"

    @classmethod
    def parse(cls, line: str) -> "ResultMetadata":
        body = line.strip()
        if not body.startswith("#"):
            raise ValueError(f"not a metadata line: '{line.strip()}'")
        fields = dict(item.split("=", 1) for item in body[1:].strip().split(","))
        return cls(**fields)  # type: ignore[arg-type]


class ResultRepository:
    def render(self, frame: pd.DataFrame, metadata: ResultMetadata) -> str:
        buffer = io.StringIO()
        buffer.write(metadata.header_line())
        frame.to_csv(
            buffer, index=False, float_format=FLOAT_FORMAT, lineterminator="\n"
        )
        return buffer.getvalue()

    def write(
        self,
        frame: pd.DataFrame,
        metadata: ResultMetadata,
        path: Optional[Union[str, Path]] = None,
    ) -> None:
        """
        Write ``frame`` as CSV to ``path``, or to stdout when no path is given.

        Files are written to a temporary sibling and renamed into place, so a
        failed run never leaves a partial file behind.
        """
        text = self.render(frame, metadata)
        if path is None:
            sys.stdout.write(text)
            sys.stdout.flush()
            return
        target = Path(path)
        target.parent.mkdir(parents=True, exist_ok=True)
        tmp = target.with_name(target.name + ".tmp")
        try:
            tmp.write_text(text, encoding="utf-8")
            tmp.replace(target)
        finally:
            if tmp.exists():
                tmp.unlink()
        logger.info(f"Wrote {len(frame)} rows to {target}")

    def read(self, path: Union[str, Path]) -> tuple[ResultMetadata, pd.DataFrame]:
        with open(path, encoding="utf-8") as handle:
            metadata = ResultMetadata.parse(handle.readline())
            frame = pd.read_csv(handle)
        return metadata, frame
