from quadembed.embeddings.certificates import (
    Certificate,
    ChainIdentity,
    SubstitutionIdentity,
    builtin_certificate,
    certify_closed,
    final_a4_left_inverse,
)
from quadembed.embeddings.charts import (
    FormWitnessReport,
    IdentityReport,
    formof_a1_witness,
    q2_chart_isomorphism_check,
    tau_chi_check,
)
from quadembed.embeddings.families import FAMILIES, EmbeddingSpec, QuadricReport, construct, verify_on_quadric
from quadembed.embeddings.fibres import (
    AllFibresOffZeroAreLines,
    FibreProfile,
    Inconclusive,
    NotOfRequiredForm,
    degenerate_fibre_profile,
    fibre_triviality_check,
)

__all__ = [
    "FAMILIES",
    "AllFibresOffZeroAreLines",
    "Certificate",
    "ChainIdentity",
    "EmbeddingSpec",
    "FibreProfile",
    "FormWitnessReport",
    "IdentityReport",
    "Inconclusive",
    "NotOfRequiredForm",
    "QuadricReport",
    "SubstitutionIdentity",
    "builtin_certificate",
    "certify_closed",
    "construct",
    "degenerate_fibre_profile",
    "fibre_triviality_check",
    "final_a4_left_inverse",
    "formof_a1_witness",
    "q2_chart_isomorphism_check",
    "tau_chi_check",
    "verify_on_quadric",
]
