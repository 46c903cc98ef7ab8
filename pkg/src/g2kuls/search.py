"""Exhaustive conjugator searches over streamed candidate sets.

A condition (X, Y) asks for g X = Y g, i.e. g X g^-1 = Y, which avoids
inverting candidates.  Candidates are visited in a fixed canonical order
and the first one meeting every condition is returned, so the witness is
the canonically least one.  Survivor sets of condition prefixes are kept,
which makes repeated searches sharing their leading conditions (e.g. the
images of r and z, which do not depend on the family parameter) cheap.
"""

from __future__ import annotations

from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass

import numpy as np

from . import linalg
from .chevalley import DIM
from .gf2m import FieldCtx

Condition = tuple[np.ndarray, np.ndarray]

_MEMO_CAP = 1 << 17


@dataclass(frozen=True)
class ScanResult:
    index: int | None
    witness: np.ndarray | None
    scanned: int

    @property
    def found(self) -> bool:
        return self.index is not None


def _key(conds: Sequence[Condition]) -> tuple:
    return tuple((x.tobytes(), y.tobytes()) for x, y in conds)


def satisfies(ctx: FieldCtx, mats: np.ndarray, cond: Condition) -> np.ndarray:
    x, y = cond
    return linalg.batch_equal(linalg.matmul(ctx, mats, x), linalg.matmul(ctx, y, mats))


class CandidateSet:
    """A finite ordered set of matrices produced batch by batch."""

    def __init__(self, ctx: FieldCtx, name: str, size: int, batches: Callable[[], Iterable[np.ndarray]]):
        self.ctx = ctx
        self.name = name
        self.size = size
        self._batches = batches
        self._memo: dict[tuple, tuple[np.ndarray, np.ndarray]] = {}

    @classmethod
    def from_array(cls, ctx: FieldCtx, name: str, mats: np.ndarray, chunk: int = 1 << 15) -> "CandidateSet":
        def batches():
            for i in range(0, len(mats), chunk):
                yield mats[i:i + chunk]

        return cls(ctx, name, len(mats), batches)

    def _survivors(self, conds: Sequence[Condition]) -> tuple[np.ndarray, np.ndarray]:
        if not conds:
            raise ValueError("need at least one condition")
        key = _key(conds)
        if key in self._memo:
            return self._memo[key]
        for cut in range(len(conds) - 1, 0, -1):
            if _key(conds[:cut]) in self._memo:
                idx, mats = self._memo[_key(conds[:cut])]
                for n in range(cut, len(conds)):
                    keep = satisfies(self.ctx, mats, conds[n])
                    idx, mats = idx[keep], mats[keep]
                    self._remember(conds[: n + 1], idx, mats)
                return idx, mats
        # full streaming pass; collect survivors after every prefix
        kept_idx: list[list[np.ndarray]] = [[] for _ in conds]
        kept_mats: list[list[np.ndarray] | None] = [[] for _ in conds]
        counts = [0] * len(conds)
        offset = 0
        for batch in self._batches():
            idx = np.arange(offset, offset + len(batch))
            offset += len(batch)
            mats = batch
            for n, cond in enumerate(conds):
                if not len(mats):
                    break
                keep = satisfies(self.ctx, mats, cond)
                idx, mats = idx[keep], mats[keep]
                counts[n] += len(idx)
                kept_idx[n].append(idx)
                if kept_mats[n] is not None:
                    if counts[n] > _MEMO_CAP:
                        kept_mats[n] = None
                    else:
                        kept_mats[n].append(mats)
        if offset != self.size:
            raise AssertionError(f"{self.name}: streamed {offset} candidates, expected {self.size}")
        result = None
        for n in range(len(conds)):
            idx = np.concatenate(kept_idx[n]) if kept_idx[n] else np.zeros(0, dtype=np.int64)
            if kept_mats[n] is None:
                continue
            mats = (
                np.concatenate(kept_mats[n])
                if kept_mats[n]
                else np.zeros((0, DIM, DIM), dtype=self.ctx.dtype)
            )
            self._remember(conds[: n + 1], idx, mats)
            result = (idx, mats)
        if result is None or len(result[0]) != counts[-1]:
            # final survivor set too large to keep: recompute it without memoizing
            return self._uncapped(conds)
        return result

    def _uncapped(self, conds):
        idxs, matss = [], []
        offset = 0
        for batch in self._batches():
            idx = np.arange(offset, offset + len(batch))
            offset += len(batch)
            mats = batch
            for cond in conds:
                keep = satisfies(self.ctx, mats, cond)
                idx, mats = idx[keep], mats[keep]
            idxs.append(idx)
            matss.append(mats)
        return np.concatenate(idxs), np.concatenate(matss)

    def _remember(self, conds, idx, mats):
        if len(idx) <= _MEMO_CAP:
            self._memo[_key(conds)] = (idx, mats)

    def first(self, conds: Sequence[Condition]) -> ScanResult:
        """Canonically least candidate satisfying every condition."""
        idx, mats = self._survivors(list(conds))
        if len(idx):
            return ScanResult(int(idx[0]), mats[0], self.size)
        return ScanResult(None, None, self.size)

    def count(self, conds: Sequence[Condition]) -> int:
        return len(self._survivors(list(conds))[0])
