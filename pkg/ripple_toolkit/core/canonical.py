# -*- coding: utf-8 -*-
"""
Ripple Toolkit - 標準型與模式分類

pattern_key 以「個體化-精煉」搜尋求出所有候選排列下
(標籤序列, 上三角鄰接位元) 編碼的最小值，作為同構不變的證書。
精煉使用標籤 + 度數起始的等價劃分；同一格中的孿生頂點只展開一次。
"""

from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from ripple_toolkit.core.models import MAX_PATTERN_ORDER, CountVector, PatternKey
from ripple_toolkit.core.subgraph import SmallGraph, gamma
from ripple_toolkit.exceptions import ConfigurationError, InvalidSubgraphError

Cells = List[List[int]]

RELATIONS = ("isomorphism", "density", "star")

# 密度分桶（左開右閉）
DENSITY_BUCKETS = (
    (0.25, "sparse"),
    (0.50, "medium"),
    (0.75, "dense"),
    (1.00, "very-dense"),
)


def _refine(masks: Sequence[int], cells: Cells) -> Cells:
    """等價劃分精煉：依「各格鄰居數」簽名切分，直到穩定"""
    while True:
        cell_masks = []
        for cell in cells:
            m = 0
            for v in cell:
                m |= 1 << v
            cell_masks.append(m)

        refined: Cells = []
        changed = False
        for cell in cells:
            if len(cell) == 1:
                refined.append(cell)
                continue
            groups: Dict[Tuple[int, ...], List[int]] = {}
            for v in cell:
                signature = tuple(bin(masks[v] & cm).count("1") for cm in cell_masks)
                groups.setdefault(signature, []).append(v)
            if len(groups) > 1:
                changed = True
                for signature in sorted(groups):
                    refined.append(groups[signature])
            else:
                refined.append(cell)
        cells = refined
        if not changed:
            return cells


def _leaf_certificate(
    masks: Sequence[int], labels: Sequence[int], ordering: Sequence[int]
) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    """離散劃分 -> (標籤序列, 上三角鄰接位元)"""
    order = len(ordering)
    bits = []
    for i in range(order):
        mi = masks[ordering[i]]
        for j in range(i + 1, order):
            bits.append(mi >> ordering[j] & 1)
    return tuple(labels[v] for v in ordering), tuple(bits)


def _is_twin(masks: Sequence[int], v: int, w: int) -> bool:
    return masks[v] & ~(1 << w) == masks[w] & ~(1 << v)


def _search(masks: Sequence[int], labels: Sequence[int], cells: Cells):
    target = next((i for i, cell in enumerate(cells) if len(cell) > 1), None)
    if target is None:
        return _leaf_certificate(masks, labels, [cell[0] for cell in cells])

    best = None
    tried: List[int] = []
    for v in cells[target]:
        # 與已展開頂點互為孿生時，兩棵子樹互為映像
        if any(_is_twin(masks, v, w) for w in tried):
            continue
        tried.append(v)
        rest = [w for w in cells[target] if w != v]
        branch = cells[:target] + [[v], rest] + cells[target + 1 :]
        candidate = _search(masks, labels, _refine(masks, branch))
        if best is None or candidate < best:
            best = candidate
    return best


@lru_cache(maxsize=1 << 18)
def _canonical_key(masks: Tuple[int, ...], labels: Tuple[int, ...]) -> bytes:
    order = len(masks)
    initial: Dict[Tuple[int, int], List[int]] = {}
    for v in range(order):
        initial.setdefault((labels[v], bin(masks[v]).count("1")), []).append(v)
    cells = [initial[key] for key in sorted(initial)]
    label_seq, bits = _search(masks, labels, _refine(masks, cells))
    packed = np.packbits(np.asarray(bits, dtype=np.uint8)).tobytes() if bits else b""
    return bytes([order]) + bytes(label_seq) + packed


def pattern_key(sg: SmallGraph, max_order: int = MAX_PATTERN_ORDER) -> PatternKey:
    """
    標準型證書

    Args:
        sg: 小型子圖
        max_order: 允許的最大階數

    Returns:
        PatternKey：同構（含標籤）的子圖得到相同的位元組字串

    Raises:
        InvalidSubgraphError: 階數超過上限或標籤超出 0..255
    """
    if sg.order > max_order:
        raise InvalidSubgraphError(f"pattern order {sg.order} exceeds {max_order}")
    if any(not 0 <= label < 256 for label in sg.labels):
        raise InvalidSubgraphError("pattern labels must lie in 0..255")
    return _canonical_key(sg.masks, sg.labels)


@lru_cache(maxsize=1 << 18)
def _classify_masks(masks: Tuple[int, ...], labels: Tuple[int, ...]) -> Tuple[bytes, int]:
    sg = SmallGraph(masks=masks, labels=labels)
    return pattern_key(sg), gamma(sg)


def classify(sg: SmallGraph) -> Tuple[PatternKey, int]:
    """一次取得 (pattern_key, γ)，以遮罩快取（隨機遊走熱路徑使用）"""
    return _classify_masks(sg.masks, sg.labels)


# ----------------------------------------------------------------------
# 模式描述
# ----------------------------------------------------------------------
def decode_key(key: PatternKey) -> SmallGraph:
    """由 PatternKey 還原標準排列下的 SmallGraph"""
    order = key[0]
    labels = tuple(key[1 : 1 + order])
    n_bits = comb(order, 2)
    bits = np.unpackbits(np.frombuffer(key[1 + order :], dtype=np.uint8))[:n_bits]
    edges = []
    position = 0
    for i in range(order):
        for j in range(i + 1, order):
            if bits[position]:
                edges.append((i, j))
            position += 1
    return SmallGraph.from_edges(order, edges, labels)


def key_from_hex(text: str) -> PatternKey:
    return bytes.fromhex(text)


@dataclass(frozen=True)
class PatternInfo:
    """模式報表欄位"""

    pattern_hex: str
    order: int
    edges: int
    density: float
    is_star: bool
    degree_sequence: Tuple[int, ...]

    def to_dict(self) -> Dict[str, object]:
        return {
            "pattern_hex": self.pattern_hex,
            "order": self.order,
            "edges": self.edges,
            "density": round(self.density, 6),
            "is_star": self.is_star,
        }


@lru_cache(maxsize=4096)
def describe_pattern(key: PatternKey) -> PatternInfo:
    sg = decode_key(key)
    order = sg.order
    edges = sg.edge_count
    degrees = tuple(sorted(sg.degrees, reverse=True))
    density = edges / comb(order, 2) if order >= 2 else 0.0
    is_star = order >= 2 and edges == order - 1 and degrees[0] == order - 1
    return PatternInfo(
        pattern_hex=key.hex(),
        order=order,
        edges=edges,
        density=density,
        is_star=is_star,
        degree_sequence=degrees,
    )


def density_bucket(density: float) -> str:
    for upper, name in DENSITY_BUCKETS:
        if 0 < density <= upper:
            return name
    return "empty"


def pattern_class(key: PatternKey, relation: str = "isomorphism") -> str:
    """
    將 PatternKey 映射到較粗的等價類

    Args:
        key: 模式證書
        relation: isomorphism | density | star
    """
    if relation == "isomorphism":
        return key.hex()
    info = describe_pattern(key)
    if relation == "density":
        return density_bucket(info.density)
    if relation == "star":
        return "star" if info.is_star else "non-star"
    raise ConfigurationError(f"unknown relation {relation!r}; expected one of {RELATIONS}")


def coarsen_counts(counts: Mapping[PatternKey, float], relation: str) -> Dict[str, float]:
    """依 relation 合併計數向量"""
    folded: Dict[str, float] = {}
    for key, value in counts.items():
        name = pattern_class(key, relation)
        folded[name] = folded.get(name, 0.0) + value
    return folded


def sorted_counts(counts: CountVector) -> List[Tuple[PatternKey, float]]:
    """依 (階數, 邊數, 十六進位) 排序，輸出順序穩定"""
    return sorted(
        counts.items(),
        key=lambda item: (describe_pattern(item[0]).order, describe_pattern(item[0]).edges, item[0].hex()),
    )


__all__ = [
    "pattern_key",
    "classify",
    "decode_key",
    "key_from_hex",
    "PatternInfo",
    "describe_pattern",
    "density_bucket",
    "pattern_class",
    "coarsen_counts",
    "sorted_counts",
    "RELATIONS",
]
