from quadembed.equivalence.fibred import (
    EquivalentToRhoLambda,
    FibredNormalForm,
    Rejected,
    normalize_fibred,
    sl2_spec_from_matrix,
    small_degree_classify,
)
from quadembed.equivalence.lifts import SL2AutoSpec, jac_extension_decide, lift_word
from quadembed.equivalence.nu import NuExtension, functional_residual, nu_equiv, nu_extension, nu_solutions
from quadembed.equivalence.pr import pr_equiv, pr_identity_residual
from quadembed.equivalence.variables import certify_variable_kt
from quadembed.equivalence.verdicts import EquivalenceVerdict
from quadembed.equivalence.words import (
    AffineLinear,
    AutomorphismWord,
    Diagonal,
    Swap,
    Translation,
    Triangular,
    elementary_word,
    tame_decompose,
)

__all__ = [
    "AffineLinear",
    "AutomorphismWord",
    "Diagonal",
    "EquivalenceVerdict",
    "EquivalentToRhoLambda",
    "FibredNormalForm",
    "NuExtension",
    "Rejected",
    "SL2AutoSpec",
    "Swap",
    "Translation",
    "Triangular",
    "certify_variable_kt",
    "elementary_word",
    "functional_residual",
    "jac_extension_decide",
    "lift_word",
    "normalize_fibred",
    "nu_equiv",
    "nu_extension",
    "nu_solutions",
    "pr_equiv",
    "pr_identity_residual",
    "sl2_spec_from_matrix",
    "small_degree_classify",
    "tame_decompose",
]
