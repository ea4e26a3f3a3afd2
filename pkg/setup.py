import os

import numpy as np
from setuptools import Extension, setup

extensions = []
if not os.environ.get("MMDIVIDER_NO_EXT"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        pass
    else:
        extensions = cythonize(
            [
                Extension(
                    "mmdivider._kernel",
                    ["src/mmdivider/_kernel.pyx"],
                    include_dirs=[np.get_include()],
                    optional=True,
                )
            ],
            language_level="3",
        )

setup(ext_modules=extensions, zip_safe=False)
