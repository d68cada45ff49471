"""Client library for spanning-set export files: lossless loading plus
trainable, autograd-ready equivariant linear layers."""

from .layer import ACTIVATIONS, EquivariantLayerHandle, layer_forward
from .loader import ExportFormatError, LoadedElement, LoadedSpanningSet, load

__version__ = "0.1.0"
