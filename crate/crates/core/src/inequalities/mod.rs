//! Weighted Dunkl inequalities as parameterized specs: admissibility, two-sided evaluation on test
//! functions, corpus verification, and the Trudinger exponential integral.

mod eval;
mod spec;
mod trudinger;

pub use eval::{
    check_class, dilation_deviation, dilation_ratios, evaluate_sides, known_ceiling, verify_corpus, ClassPolicy,
    CorpusReport, EvalContext, EvalOptions, VerificationRecord, CEILING_TOL,
};
pub use spec::{
    admissible, ckn_example, ckn_example_classical, gn_theta_at_p2, AdmissibilityReport, FailedCondition,
    FunctionClass, InequalitySpec, Theorem, ADMISSIBILITY_TOL,
};
pub use trudinger::{
    exp_remainder, subtracted_terms, trudinger_lhs, trudinger_normalize, trudinger_sup_ratio, trudinger_threshold,
    SERIES_CAP,
};
