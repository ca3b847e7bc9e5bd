from numerics.hurwitz import (
    BoundKind,
    EvalParams,
    EvalRequest,
    EvalResult,
    eval_h1,
    eval_hmzf,
    eval_mzv,
    eval_polynomial,
    hurwitz_zeta,
)
