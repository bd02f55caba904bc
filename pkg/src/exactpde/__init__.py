"""Verification engine for exact general solutions of nonlinear second-order PDEs.

The catalogue stores each PDE as a residual expression and its claimed
general solution as a formula that may contain integrals, implicitly
defined roots and special functions.  The verifier evaluates the solution
with exact second-order jets, substitutes it into the residual on a grid
of points and reports the normalized residual.
"""

from .errors import *  # noqa: F401,F403
from .expr import parse, to_text, free_names
from .jet import Jet
from .evaluate import EvalEnv, eval_expr, residual_eval

__version__ = "0.1.0"

__all__ = ["parse", "to_text", "free_names", "Jet", "EvalEnv", "eval_expr", "residual_eval", "__version__"]
