"""Tempered distributions as finite atom sums, and their pairings."""
from .atoms import (BASE_KINDS, DensityAtom, DiracAtom, Distribution, order_bound)
from .pairing import (CauchyKernel, MixtureKernel, PoissonKernel, integrate_density,
                      pair_cauchy_detail, pair_cauchy_kernel, pair_mixture_detail,
                      pair_test_detail, pair_test_function)
from .testfunc import GaussianMixture, TestFunction, component_gram, random_test_function

__all__ = [
    "BASE_KINDS", "DensityAtom", "DiracAtom", "Distribution", "order_bound",
    "CauchyKernel", "MixtureKernel", "PoissonKernel", "integrate_density",
    "pair_cauchy_detail", "pair_cauchy_kernel", "pair_mixture_detail", "pair_test_detail",
    "pair_test_function",
    "GaussianMixture", "TestFunction", "component_gram", "random_test_function",
]
