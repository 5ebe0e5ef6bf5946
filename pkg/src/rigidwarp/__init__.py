"""Rigidity-preserving image warps and pitch-yaw geometry.

Rotating a camera about its center moves the image by a homography that
commutes with rigid scene motion; plain pixel translations do not.
This package provides that family of warps, the roll-free pitch-yaw
parameterization behind them, resampling to arc coordinates where small
tilts become translations, pose-consistent data augmentation, group
convolution on the warped grid, and the numerical analysis comparing
translation-like actions against true rotation.
"""

from .augment import AugConfig, AugSample, apply_aug_p2, apply_aug_py, sample_aug
from .camera import (Camera, apply_homography, project, rotational_homography,
                     unproject)
from .conv import PYKernel, equivariance_report, py_convolve
from .distortion import (chi_act, error_field, fov_error_ratio, phi_act, psi,
                         t_of_alpha, taylor_order_check)
from .errors import (BehindCameraError, DegenerateInputError, GeometryDomainError,
                     NonInjectiveError, OutOfHemisphereError, SpacingMismatchError)
from .pitchyaw import (exp_py, from_indexed_sphere, from_plane, min_py_log,
                       py_matrix, to_indexed_sphere, to_plane)
from .raster import Raster, from_image
from .rigidity import rigidity_witness, sset_grid_check, sset_solve
from .warp import (PYPoseTarget, homography_warp, pixel_frame, target_from_py,
                   target_to_py, warp_from_py, warp_to_py)

__version__ = "0.1.0"

__all__ = [
    "AugConfig", "AugSample", "apply_aug_p2", "apply_aug_py", "sample_aug",
    "Camera", "apply_homography", "project", "rotational_homography", "unproject",
    "PYKernel", "equivariance_report", "py_convolve",
    "chi_act", "error_field", "fov_error_ratio", "phi_act", "psi",
    "t_of_alpha", "taylor_order_check",
    "BehindCameraError", "DegenerateInputError", "GeometryDomainError",
    "NonInjectiveError", "OutOfHemisphereError", "SpacingMismatchError",
    "exp_py", "from_indexed_sphere", "from_plane", "min_py_log",
    "py_matrix", "to_indexed_sphere", "to_plane",
    "Raster", "from_image",
    "rigidity_witness", "sset_grid_check", "sset_solve",
    "PYPoseTarget", "homography_warp", "pixel_frame", "target_from_py",
    "target_to_py", "warp_from_py", "warp_to_py",
]
