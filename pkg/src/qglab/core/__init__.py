from .algebra import (
    Algebra,
    Element,
    Monomial,
    TensorElement,
    TorusMonomial,
    adjoint,
    alpha,
    alpha_star,
    circle_u,
    circle_z,
    gamma,
    gamma_star,
    multiply,
    one,
    scalar,
    torus_v,
    torus_w,
    u_theta,
    u_theta_star,
    zero,
)
from .coeffs import Coeff, GaussianRational, RationalValue
from .hopf import (
    antipode,
    conditional_expectation,
    coproduct,
    counit,
    haar_state,
    invariant_part,
    quotient_to_circle,
    t_degree,
)
