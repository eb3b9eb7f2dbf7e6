"""Exact computations in twisted Hamiltonian Lie algebras and their (xi, f) modules."""

from .algebra import HamiltonianAlgebra, QuotientElement
from .closure import (
    ClosureReport,
    EchelonSpan,
    Window,
    derived_subalgebra_window,
    eigen_separate,
    ideal_closure,
    rref_exact,
    submodule_closure,
)
from .config import Config, load_config, parse_config
from .elements import AlgebraElement, parse_element, render
from .lattice import (
    AlgebraSignature,
    Character,
    ModuleSignature,
    SemigroupMask,
    SkewForm,
    radical_basis,
    solve_mu,
    validate_module_signature,
    validate_signature,
)
from .module import ActionContext, ModuleVector, act, check_intertwiner, check_representation, psi_map

__all__ = [
    "ActionContext",
    "AlgebraElement",
    "AlgebraSignature",
    "Character",
    "ClosureReport",
    "Config",
    "EchelonSpan",
    "HamiltonianAlgebra",
    "ModuleSignature",
    "ModuleVector",
    "QuotientElement",
    "SemigroupMask",
    "SkewForm",
    "Window",
    "act",
    "check_intertwiner",
    "check_representation",
    "derived_subalgebra_window",
    "eigen_separate",
    "ideal_closure",
    "load_config",
    "parse_config",
    "parse_element",
    "psi_map",
    "radical_basis",
    "render",
    "rref_exact",
    "solve_mu",
    "submodule_closure",
    "validate_module_signature",
    "validate_signature",
]
