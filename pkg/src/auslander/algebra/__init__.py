"""Lambda_n, its modules, homological algebra and ideals."""
from .homological import (
    Resolution,
    UndecidedIsomorphism,
    end_dim,
    endomorphism_top_rank,
    ext_dim,
    ext_dims,
    find_isomorphism,
    hom_dim,
    hom_space,
    is_indecomposable,
    is_isomorphic,
    projective_cover,
    projective_dimension,
    projective_resolution,
)
from .ideals import (
    Ideal,
    ProjectiveDimensionTooLarge,
    complement_ideal,
    ideal_closure,
    ideal_product,
    ideal_summand_module,
    left_multiplication,
    tensor_with_ideal,
    whole_algebra,
)
from .modules import (
    Module,
    ModuleMap,
    ModuleSide,
    Projective,
    cokernel,
    direct_sum,
    dual,
    identity_map,
    injective,
    kernel,
    left_projective,
    projective,
    simple,
    zero_module,
)
from .path_algebra import Arrow, AuslanderAlgebra, build_algebra
