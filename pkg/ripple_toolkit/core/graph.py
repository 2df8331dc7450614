# -*- coding: utf-8 -*-
"""
Ripple Toolkit - 輸入圖

不可變的簡單無向圖 G = (V, E, L)：CSR 鄰接、度數、可選頂點標籤，
以及 BFS 距離與連通分量等基本查詢。

邊列表格式（SNAP 相容）:
    # 開頭或 % 開頭的行為註解，"# Nodes: N" 會被用來保留尾端的孤立頂點
    每行 "u v"，以空白分隔的兩個非負整數
"""

import re
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
import scipy.sparse as sp
from scipy.sparse import csgraph

from ripple_toolkit.exceptions import GraphFormatError, InvalidSubgraphError
from ripple_toolkit.utils.logger import logger

PathLike = Union[str, Path]

_COMMENT_PREFIXES = ("#", "%")
_NODES_HEADER = re.compile(r"nodes:\s*(\d+)", re.IGNORECASE)


@dataclass(frozen=True, eq=False)
class InputGraph:
    """
    不可變的簡單圖（CSR 表示）

    Attributes:
        indptr: CSR 列指標，長度 n+1
        indices: 依頂點排序、嚴格遞增的鄰居 id
        labels: 每個頂點的小整數標籤（預設 0）
        original_ids: 重新編號前的原始 id（未重新編號時為 None）
    """

    indptr: np.ndarray
    indices: np.ndarray
    labels: np.ndarray
    original_ids: Optional[np.ndarray] = field(default=None)

    def __post_init__(self):
        for array in (self.indptr, self.indices, self.labels, self.original_ids):
            if array is not None:
                array.setflags(write=False)

    # ------------------------------------------------------------------
    # 建構
    # ------------------------------------------------------------------
    @classmethod
    def from_edges(
        cls,
        edges: Iterable[Tuple[int, int]],
        n: Optional[int] = None,
        labels: Optional[Sequence[int]] = None,
        original_ids: Optional[Sequence[int]] = None,
    ) -> "InputGraph":
        """
        由邊列表建立簡單圖：去除自迴圈、重複邊並對稱化

        Args:
            edges: (u, v) 頂點 id 對
            n: 頂點數（預設為最大 id + 1）
            labels: 頂點標籤
            original_ids: 原始 id 對照

        Returns:
            InputGraph
        """
        pairs = np.asarray(list(edges), dtype=np.int64).reshape(-1, 2)
        if pairs.size and pairs.min() < 0:
            raise GraphFormatError("vertex ids must be non-negative")
        max_id = int(pairs.max()) if pairs.size else -1
        n = max(max_id + 1, n or 0)

        keep = pairs[:, 0] != pairs[:, 1]
        pairs = pairs[keep]
        rows = np.concatenate([pairs[:, 0], pairs[:, 1]])
        cols = np.concatenate([pairs[:, 1], pairs[:, 0]])

        matrix = sp.csr_matrix(
            (np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(n, n)
        )
        matrix.sum_duplicates()
        matrix.sort_indices()

        if labels is None:
            label_array = np.zeros(n, dtype=np.int64)
        else:
            label_array = np.asarray(labels, dtype=np.int64)
            if len(label_array) != n:
                raise GraphFormatError(
                    f"label count {len(label_array)} does not match vertex count {n}"
                )

        id_array = None
        if original_ids is not None:
            id_array = np.asarray(original_ids, dtype=np.int64)

        return cls(
            indptr=matrix.indptr.astype(np.int64),
            indices=matrix.indices.astype(np.int64),
            labels=label_array,
            original_ids=id_array,
        )

    # ------------------------------------------------------------------
    # 基本屬性
    # ------------------------------------------------------------------
    @property
    def n(self) -> int:
        """頂點數"""
        return len(self.indptr) - 1

    @property
    def num_edges(self) -> int:
        """無向邊數"""
        return len(self.indices) // 2

    @cached_property
    def degree(self) -> np.ndarray:
        """每個頂點的度數"""
        deg = np.diff(self.indptr)
        deg.setflags(write=False)
        return deg

    @cached_property
    def matrix(self) -> sp.csr_matrix:
        """scipy CSR 鄰接矩陣"""
        data = np.ones(len(self.indices), dtype=np.int8)
        return sp.csr_matrix((data, self.indices, self.indptr), shape=(self.n, self.n))

    @cached_property
    def adjacency(self) -> List[Tuple[int, ...]]:
        """Python 元組形式的鄰接表（隨機遊走的熱路徑使用）"""
        ptr = self.indptr.tolist()
        idx = self.indices.tolist()
        return [tuple(idx[ptr[u] : ptr[u + 1]]) for u in range(self.n)]

    @cached_property
    def adjacency_sets(self) -> List[FrozenSet[int]]:
        """鄰居集合，用於 O(1) 相鄰判斷"""
        return [frozenset(nbrs) for nbrs in self.adjacency]

    @cached_property
    def label_list(self) -> List[int]:
        return self.labels.tolist()

    def neighbors(self, u: int) -> np.ndarray:
        """回傳 u 的鄰居（唯讀檢視）"""
        return self.indices[self.indptr[u] : self.indptr[u + 1]]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency_sets[u]

    def edges(self) -> Iterable[Tuple[int, int]]:
        """依序產生每條無向邊一次 (u < v)"""
        for u, nbrs in enumerate(self.adjacency):
            for v in nbrs:
                if u < v:
                    yield (u, v)

    def __repr__(self) -> str:
        return f"InputGraph(n={self.n}, edges={self.num_edges})"


def neighbors(g: InputGraph, u: int) -> np.ndarray:
    """回傳 adjacency[u]（唯讀）"""
    return g.neighbors(u)


# ----------------------------------------------------------------------
# 載入與寫出
# ----------------------------------------------------------------------
def load_edge_list(
    path: PathLike, labels_path: Optional[PathLike] = None, remap: bool = False
) -> InputGraph:
    """
    載入邊列表檔案

    Args:
        path: 邊列表路徑
        labels_path: 標籤檔路徑（每行一個整數）
        remap: 是否將稀疏的原始 id 壓縮為 0..n-1

    Returns:
        InputGraph

    Raises:
        GraphFormatError: 解析失敗（附行號）或標籤數量不符
    """
    path = Path(path)
    if not path.exists():
        raise GraphFormatError("file not found", path=str(path))

    edges: List[Tuple[int, int]] = []
    declared_nodes = 0
    with open(path, "r", encoding="utf-8") as f:
        for line_no, raw in enumerate(f, 1):
            line = raw.strip()
            if not line:
                continue
            if line.startswith(_COMMENT_PREFIXES):
                match = _NODES_HEADER.search(line)
                if match:
                    declared_nodes = int(match.group(1))
                continue
            tokens = line.split()
            if len(tokens) < 2:
                raise GraphFormatError(
                    f"expected two vertex ids, got {line!r}", path=str(path), line_no=line_no
                )
            try:
                u, v = int(tokens[0]), int(tokens[1])
            except ValueError:
                raise GraphFormatError(
                    f"non-integer vertex id in {line!r}", path=str(path), line_no=line_no
                ) from None
            if u < 0 or v < 0:
                raise GraphFormatError(
                    f"negative vertex id in {line!r}", path=str(path), line_no=line_no
                )
            edges.append((u, v))

    original_ids = None
    n = declared_nodes
    if remap:
        ids = sorted({x for edge in edges for x in edge})
        index = {old: new for new, old in enumerate(ids)}
        edges = [(index[u], index[v]) for u, v in edges]
        original_ids = ids
        n = len(ids)

    labels = load_labels(labels_path) if labels_path is not None else None
    try:
        g = InputGraph.from_edges(edges, n=n, labels=labels, original_ids=original_ids)
    except GraphFormatError as e:
        raise GraphFormatError(str(e), path=str(labels_path or path)) from e

    logger.info("Loaded graph %s: %d vertices, %d edges", path.name, g.n, g.num_edges)
    return g


def load_labels(path: PathLike) -> List[int]:
    """載入標籤檔：第 i 行為頂點 i 的標籤"""
    labels: List[int] = []
    with open(path, "r", encoding="utf-8") as f:
        for line_no, raw in enumerate(f, 1):
            line = raw.strip()
            if not line or line.startswith(_COMMENT_PREFIXES):
                continue
            try:
                label = int(line.split()[0])
            except ValueError:
                raise GraphFormatError(
                    f"non-integer label {line!r}", path=str(path), line_no=line_no
                ) from None
            if not 0 <= label < 256:
                raise GraphFormatError(
                    f"label {label} outside 0..255", path=str(path), line_no=line_no
                )
            labels.append(label)
    return labels


def write_edge_list(g: InputGraph, path: PathLike) -> Path:
    """寫出邊列表（含 "# Nodes:" 標頭，重新載入可得相同鄰接結構）"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        f.write(f"# Nodes: {g.n} Edges: {g.num_edges}\n")
        for u, v in g.edges():
            f.write(f"{u} {v}\n")
    return path


def write_id_map(g: InputGraph, path: PathLike) -> Path:
    """寫出重新編號對照表：每行 "new_id original_id" """
    path = Path(path)
    ids = g.original_ids if g.original_ids is not None else np.arange(g.n)
    with open(path, "w", encoding="utf-8") as f:
        for new_id, old_id in enumerate(ids.tolist()):
            f.write(f"{new_id} {old_id}\n")
    return path


# ----------------------------------------------------------------------
# 查詢
# ----------------------------------------------------------------------
def multi_source_bfs_dist(g: InputGraph, sources: Iterable[int]) -> np.ndarray:
    """
    多源 BFS 距離

    Args:
        g: 輸入圖
        sources: 非空的源點集合

    Returns:
        np.ndarray: dist[u] 為 u 到最近源點的跳數，不可達為 inf
    """
    source_list = sorted(set(int(s) for s in sources))
    if not source_list:
        raise InvalidSubgraphError("multi_source_bfs_dist requires a non-empty source set")
    if source_list[0] < 0 or source_list[-1] >= g.n:
        raise InvalidSubgraphError(f"source id outside 0..{g.n - 1}")

    dist = csgraph.dijkstra(
        g.matrix, directed=False, indices=source_list, unweighted=True, min_only=True
    )
    return np.asarray(dist, dtype=np.float64)


def connected_components(g: InputGraph) -> np.ndarray:
    """
    連通分量

    Returns:
        np.ndarray: 每個頂點的分量 id，依分量最小頂點排序（頂點 0 所在分量為 0）
    """
    if g.n == 0:
        return np.zeros(0, dtype=np.int64)
    _, labels = csgraph.connected_components(g.matrix, directed=False)
    _, first_index = np.unique(labels, return_index=True)
    order = np.argsort(first_index)
    remap = np.empty_like(order)
    remap[order] = np.arange(len(order))
    return remap[labels].astype(np.int64)


__all__ = [
    "InputGraph",
    "neighbors",
    "load_edge_list",
    "load_labels",
    "write_edge_list",
    "write_id_map",
    "multi_source_bfs_dist",
    "connected_components",
]
