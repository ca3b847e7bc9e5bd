from algebra.composition import (
    EMPTY,
    Composition,
    FormalSum,
    Measures,
    compositions_up_to,
    enumerate_compositions,
    is_convergent,
    measures,
    parse_composition,
    render_composition,
    render_sum,
    sum_combine,
)
from algebra.graded import (
    GeneratorPolynomial,
    GeneratorTable,
    Monomial,
    build_generator_table,
    dimension,
    reduce_to_normal_form,
    round_trip_failures,
    verify_freeness,
)
from algebra.lyndon import cfl_factorize, count_lyndon, generate_lyndon, is_lyndon
from algebra.stuffle import expand_monomial, stuffle, stuffle_bilinear, stuffle_power
