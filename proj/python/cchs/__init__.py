"""Color-selective edge detection and edge-pretreated optical flow."""

from ._cchs import (
    FLOW_PRETREAT_SCALE,
    METHODS,
    SQUARE_COLOR,
    IoError,
    NumericalError,
    ParameterError,
    cchs_transform,
    clifford_product,
    color_flow,
    corrupt,
    detect,
    fsim,
    gradient,
    lk_flow,
    load_image,
    nms,
    pratt_f,
    psnr,
    rectangles,
    save_image,
    snr,
    srgb_to_lab,
    ssim,
    step_edge,
    to_lab,
    translated_square_pair,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
