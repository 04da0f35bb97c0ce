"""Exact chromatic symmetric functions of (3+1)-free posets via part listings."""

from .csf import csf_graph, csf_lin, csf_listing, csf_poset, verify_modular
from .listing import (
    BicolouredGraph,
    GraphPart,
    LinListing,
    PartListing,
    VertexPart,
    circulate,
    circulate_general,
    combine,
    commute,
    find_listing,
    listing_to_poset,
    parse_graph,
    parse_listing,
    peel,
    serialize_listing,
    two_level_word_to_graph,
)
from .modular import (
    circulate_udu,
    decompose_dual,
    dud,
    functionals,
    matching_reduction,
    modular_triple,
    reduce_listing,
    three_free_e_expansion,
    udu,
)
from .poset import (
    Poset,
    PosetClass,
    canonical_key,
    contains_induced,
    dual,
    enumerate_posets,
    is_2plus2_free,
    is_3_free,
    is_3plus1_free,
    ordinal_split,
    poset_from_relations,
)
from .symfunc import (
    E,
    M,
    SymFunc,
    e_to_m,
    is_e_positive,
    m_to_e,
    parse_symfunc,
    partitions_of,
    sf_add,
    sf_mul,
    sf_scale,
)

__version__ = "0.1.0"
