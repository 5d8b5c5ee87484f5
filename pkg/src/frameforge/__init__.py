"""Wavelet frames from activation functions, greedy approximation and shallow-network export."""
from . import activations, errors, frame, greedy, kernelcheck, network, quadrature
from .activations import ActivationSpec, eval_grad, eval_hessian, eval_sigma, normalize_sigma
from .frame import AtomIndex, Dictionary, WaveletExpansion, build_dictionary, eval_expansion
from .greedy import oga, verify_rate
from .kernelcheck import HomogeneousConstants, KernelReport, check_kernel
from .network import WBNetParams, expansion_to_wbnet, eval_wbnet, fit_sigma_dagger
from .quadrature import Grid, make_grid

__version__ = "0.1.0"

__all__ = [
    "activations", "errors", "frame", "greedy", "kernelcheck", "network", "quadrature",
    "ActivationSpec", "eval_grad", "eval_hessian", "eval_sigma", "normalize_sigma",
    "AtomIndex", "Dictionary", "WaveletExpansion", "build_dictionary", "eval_expansion",
    "oga", "verify_rate", "HomogeneousConstants", "KernelReport", "check_kernel",
    "WBNetParams", "expansion_to_wbnet", "eval_wbnet", "fit_sigma_dagger",
    "Grid", "make_grid",
]
