"""Buneman graphs of split systems: cut vertices, blocks and X-trees."""

from .blocks import (
    Block,
    BlockDecomposition,
    all_blocks,
    block_of,
    blocks_intersect,
    gate,
    inter_block_gate,
    separation_test,
)
from .config import config_context, get_config, set_config
from .cuts import (
    CutAnalysis,
    component_correspondences,
    delta_min,
    gamma_phi_sigma,
    gamma_phi_sigma_min,
    gamma_phi_v,
    gamma_phi_x,
    is_cut_vertex,
)
from .exceptions import BunemanError
from .graph import BunemanGraph, distance, enumerate_vertices, median
from .io import load_split_file, parse_split_text, save_split_file
from .relations import BiRelation, component_bijection, lifted_bijection
from .splits import (
    GroundSet,
    Split,
    SplitSystem,
    a_arrow,
    a_arrow_component,
    incompatibility_graph,
    is_compatible,
)
from .trees import (
    BlockCutTree,
    XTree,
    block_cut_tree,
    buneman_tree_criterion,
    leaf_label_bijection_test,
    newick,
    reduce_to_xtree,
    sim_classes,
    triple_degree_check,
)

__version__ = "0.1.0"
