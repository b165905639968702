"""sumlab: numerical laboratory for critical-index summability of spherical
harmonic expansions."""

__version__ = "0.1.0"

from .specfun import (CesaroWeight, OrthoPolyParams, cesaro_number,
                      cesaro_numbers, delta0, gen_binomial, gegenbauer_eval,
                      jacobi_eval, log_gamma)
from .sphere import (AtomicMeasure, SpherePoint, antipode, ball_measure,
                     geodesic_distance, greedy_packing, hl_maximal,
                     integer_relation_probe, remove_antipodal_pairs,
                     riemann_sum, sample_uniform, sphere_grid,
                     sphere_quadrature)
from .kernels import (KernelDecomposition, amplitude, cesaro_kernel,
                      convolve_atomic, decompose, error_series, harmonic_dim,
                      main_term, szego_coefficient, szego_limit, zonal_kernel)
from .summation import (SummationSpec, apply, bochner_riesz_reduction,
                        compare_methods, delta_lift, ingham_a_polys,
                        ingham_b_coeffs, phi_mean,
                        shifted_riesz_identity_check)
from .divergence import (ScanResult, StagedFunction, build_staged,
                         kernel_sup_norm, kronecker_target,
                         measure_projection, scan_grid, scan_sup,
                         smooth_to_polynomial)
