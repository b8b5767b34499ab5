"""Exact symbolic verification of quantum-group, q-boson, prefundamental and KLR-algebra relations.

Modules: ``qcoeff`` (rational functions in q), ``cartan`` (Cartan data),
``symgrp`` (permutations, reduced words, weak order), ``uqplus`` (the
positive part modulo the radical of the Lusztig form), ``boson`` (q-boson
operators), ``affine`` (the affine generator E_0), ``prefund`` (the
prefundamental quotient), ``klr`` (KLR algebras in PBW normal form),
``bimodule`` (the affine bimodule M_alpha) and ``cli``.
"""

__version__ = "0.1.0"

from .qcoeff import QScalar, parse_qscalar, quantum_binom, quantum_int
from .report import CheckResult, Report

__all__ = ["CheckResult", "QScalar", "Report", "__version__", "parse_qscalar", "quantum_binom", "quantum_int"]
