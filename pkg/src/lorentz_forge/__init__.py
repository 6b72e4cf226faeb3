"""Desk-scale machinery for iterated rearrangements, anisotropic (grand)
Lorentz norms, Fourier coefficients of bounded orthonormal systems, a
constructive K-functional bound, and an inequality verification harness."""

from .stepfun import (DivergentIntegralError, DyadicStep1D, DyadicStep2D,
                      constant_grid, evaluate, indicator_grid, load_grid,
                      power_weight_integral, refine, save_grid,
                      weighted_integral_1d)
from .rearrange import (Sequence2D, distribution_function,
                        iterated_rearrange_2d, iterated_rearrange_seq,
                        iterated_rearrange_seq_first_index, rearrange_1d)
from .norms import (Exponents, GrandNormResult, GrandParams,
                    discrete_grand_norm_P6, evaluate_norm_request,
                    grand_lorentz_norm, grand_seq_norm, logweight_sup_norm,
                    lorentz_norm, mixed_lebesgue_norm, seq_block_lorentz_norm)
from .fourier import (TRIG, WALSH, CoeffMatrix, OrthonormalSystem,
                      block_l2, block_sup_lhs, bochkarev_lhs, coeffs_2d,
                      coeffs_from_values, gram_matrix, te3_lhs, te4_lhs,
                      trig_frequency, walsh_synthesize)
from .interpolation import (KTerms, ThetaPoint, beta_from_q, constant_D,
                            interp_norm, k_upper, khat_grid, theta_from_p)
from .oracles import OracleResult, oracle_lorentz_norm, oracle_rearrange

__version__ = "0.1.0"
