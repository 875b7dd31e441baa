"""Quantum states from Laplacians of star-relevant graphs."""

from .graphs import (
    DensityMatrix,
    Graph,
    density_matrix,
    parse_graph,
    serialize_graph,
    star,
    star_alike_disjoint,
    star_alike_path,
    star_like,
    star_mlike,
    star_plus_path,
    wheel,
)
from .locc import locc_transformable, locc_verdict_pair, majorizes
from .spectra import (
    Spectrum,
    closed_form_spectrum,
    entropy,
    entropy_closed_form,
    numeric_spectrum,
)

__version__ = "0.1.0"
