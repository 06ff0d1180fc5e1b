from src.kernels.dirichlet import (
    KernelCache,
    KernelKind,
    KernelMethod,
    KernelSpec,
    dirichlet_kernel,
    fejer_closed_form,
    fejer_kernel,
    highest_bit,
    iter_dirichlet_kernels,
    iter_fejer_kernels,
    kernel,
    norlund_kernel,
    norlund_kernel_dyadic,
    norlund_mass,
    norlund_multiplier,
    norlund_multipliers,
)

__all__ = [
    "KernelCache",
    "KernelKind",
    "KernelMethod",
    "KernelSpec",
    "dirichlet_kernel",
    "fejer_closed_form",
    "fejer_kernel",
    "highest_bit",
    "iter_dirichlet_kernels",
    "iter_fejer_kernels",
    "kernel",
    "norlund_kernel",
    "norlund_kernel_dyadic",
    "norlund_mass",
    "norlund_multiplier",
    "norlund_multipliers",
]
