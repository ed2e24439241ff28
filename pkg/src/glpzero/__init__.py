from __future__ import annotations

# Ordinal hyperation and the closed fragment of transfinite provability
# logic: Kripke and topological semantics with a decision procedure.

from .config import ModelConfig
from .formula import Worm, modal_depth, modalities, parse
from .hyper import approx, hyperexp, hyperlog, norm, norm_set
from .kripke import bisim_check, decide, eval, satisfiable, valid, worm_less
from .lseq import LSeq, ceil, main_axis
from .ordinal import NEG_ONE, OMEGA, ONE, ZERO, Ordinal, parse_ordinal
from .topo import agree, isolating_nbhd, topo_eval

__all__ = [
    "ModelConfig", "Worm", "modal_depth", "modalities", "parse", "approx",
    "hyperexp", "hyperlog", "norm", "norm_set", "bisim_check", "decide",
    "eval", "satisfiable", "valid", "worm_less", "LSeq", "ceil", "main_axis",
    "NEG_ONE", "OMEGA", "ONE", "ZERO", "Ordinal", "parse_ordinal", "agree",
    "isolating_nbhd", "topo_eval",
]
