"""Separability of regular and context-free languages by piecewise testable languages."""
from .closures import dc_cfg, diagonal_via_sup, ideal_decompose, ideal_in_dc, sup_decide
from .engine import (Inseparable, Separable, Undecided, is_ptl_regular, separate, sup_via_separability,
                     validate)
from .grammar import Cfg, diagonal_cfg, parse_cfg
from .ideals import Block, Ideal, Opt
from .lang import LangRef
from .patterns import Pattern, contains_pattern, normalize_proper, pattern_lang_nfa
from .ptl import class_formula, eval_formula, formula_to_nfa, profile_automaton
from .regular import Nfa, dc_nfa, diagonal_nfa
from .words import simon_equiv, word

__version__ = "0.1.0"
