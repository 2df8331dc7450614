# -*- coding: utf-8 -*-
"""子命令共用的輸入處理"""

import argparse

from ripple_toolkit.core.graph import InputGraph, load_edge_list, write_id_map
from ripple_toolkit.core.models import RunConfig
from ripple_toolkit.processors.ripple_engine import worker_rng
from ripple_toolkit.processors.stratify import SeedSet, select_seeds
from ripple_toolkit.utils.logger import logger


def load_graph_from_args(args: argparse.Namespace) -> InputGraph:
    """依 --graph / --labels / --remap 載入輸入圖，必要時寫出 id 對照表"""
    g = load_edge_list(args.graph, labels_path=getattr(args, "labels", None), remap=getattr(args, "remap", False))
    id_map = getattr(args, "id_map_out", None)
    if id_map:
        write_id_map(g, id_map)
        logger.info("Vertex id map written to %s", id_map)
    return g


def seeds_from_args(args: argparse.Namespace, g: InputGraph, cfg: RunConfig) -> SeedSet:
    """--seeds-in 讀取種子，否則以 select_seeds 選擇；--seeds-out 寫出"""
    seeds_in = getattr(args, "seeds_in", None)
    if seeds_in:
        seeds = SeedSet.from_json(seeds_in, g)
        logger.info("Loaded %d seeds from %s", seeds.size, seeds_in)
    else:
        seeds = select_seeds(g, cfg.n1, cfg.k, worker_rng(cfg.rng_seed, 0, 0))
    seeds_out = getattr(args, "seeds_out", None)
    if seeds_out:
        seeds.to_json(seeds_out)
    return seeds
