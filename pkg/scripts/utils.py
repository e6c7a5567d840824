import sys
from pathlib import Path
from typing import Tuple, Union

# Add the project root to Python path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from app.builders import BUILTINS, build_example  # noqa: E402
from app.serialization import load_algebra, load_module  # noqa: E402
from src.algcore import Algebra  # noqa: E402
from src.errors import ParseError  # noqa: E402
from src.hopf import HopfAlgebra, adjoint_module, counit_kernel_module, trivial_module  # noqa: E402
from src.modrep import Module  # noqa: E402

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_INPUT = 2

DATA_DIR = project_root / "app" / "data"
BUILTIN_PREFIX = "builtin:"


def load_input(source: str) -> Union[Algebra, HopfAlgebra]:
    """
    Load "builtin:<name>", a bundled file name under app/data, or a JSON path.

    Raises:
        ParseError: unknown builtin, missing file or malformed content
    """
    if source.startswith(BUILTIN_PREFIX):
        name = source[len(BUILTIN_PREFIX):]
        if name not in BUILTINS:
            raise ParseError(f"unknown builtin '{name}'; available: {', '.join(sorted(BUILTINS))}")
        return build_example(name)
    path = Path(source)
    if not path.exists() and (DATA_DIR / source).exists():
        path = DATA_DIR / source
    return load_algebra(path)


def require_hopf(obj: Union[Algebra, HopfAlgebra], command: str) -> HopfAlgebra:
    if not isinstance(obj, HopfAlgebra):
        raise ParseError(f"'{command}' needs a Hopf algebra (coproduct, counit and antipode)")
    return obj


def resolve_module(hopf: HopfAlgebra, spec: str) -> Module:
    """trivial | adjoint | counit_kernel | path to a module JSON file."""
    if spec == "trivial":
        return trivial_module(hopf)
    if spec == "adjoint":
        return adjoint_module(hopf)
    if spec == "counit_kernel":
        return counit_kernel_module(hopf)
    return load_module(hopf.algebra, spec)


def split_status(ok: bool) -> Tuple[str, int]:
    return ("✅", EXIT_OK) if ok else ("❌", EXIT_FAILURE)
