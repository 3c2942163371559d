"""Local Hausdorff-Young constants and Fourier type growth certificates on compact Lie groups."""

__version__ = "0.1.0"

from .errors import (ClosureError, ConfigurationError, DomainError, LieHYError,
                     NyquistError, SingularPointError)
from .rootsys import (CartanSpec, Group, RootSystem, WeylGroup, build_root_system,
                      dominant_decomposition, enumerate_dominant_weights,
                      generate_weyl_group, is_dominant, is_singular, load_group,
                      parse_group, weyl_dimension)
from .torus import (CentralFunction, TorusGrid, eval_A, eval_A_delta_product, make_grid,
                    sample, symmetrize, torus_fourier, weyl_integral_norm)
from .spectral import (SpectralCoefficients, central_fourier, character_function,
                       eval_character, spectral_norm_direct, spectral_norm_lattice)
from .localhy import (ConstantsBundle, TestProfile, babenko_beckner, closed_form_Kf0,
                      constants, estimate_local_constant, euclidean_weighted_norm,
                      lq_bound_check, riemann_limit_check, scaled_family)
from .sharpness import (GrowthCertificate, TranslationSet, build_translation_set,
                        character_experiment, diag_mixed_norms, growth_certificate,
                        kprime_statistic)
