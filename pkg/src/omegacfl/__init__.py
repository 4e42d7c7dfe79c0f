"""omegacfl: context-free omega-languages at desk scale.

Lasso words, context-free grammars, Buchi/Muller (pushdown) automata with
exact lasso acceptance, omega-Kleene expressions, regular infinite binary
trees with their level-order coding, and the branch-guessing pushdown
transform.
"""

from .words import (Alphabet, Lasso, Word, alphabet, concat, format_lasso,
                    lasso, parse_lasso, word)
from .cfg import (Cfg, Substitution, apply_substitution, cfg, cfg_empty,
                  cfg_generates_lambda, cfg_member, doubling_filler,
                  filler_insertion, gap_too_long, gap_too_short,
                  block_encoding_morphism, substitution, word_substitution)
from .buchi import BuchiAutomaton, Fsm, MullerAutomaton, RunWitness
from .pushdown import (Bpda, BuchiPds, Configuration, Mpda, Pdm,
                       bounded_runs, buchi_pds_empty, initial_configuration,
                       product_with_lasso, step)
from .kleene import (OmegaKleeneExpr, kc_substitute, kc_to_bpda, kc_union,
                     lasso_in_kc, omega_kleene, omega_power)
from .trees import (LevelEnumeration, RegularTree, coding_complement_expr,
                    f_embed, h_prefix, j_leftmost, level_homogeneous_tree,
                    level_nodes)
from .branching import (BranchGuessMachine, branch_evidence,
                        branch_guess_machine, filler_image_expr)

__all__ = [name for name in dir() if not name.startswith("_")]
