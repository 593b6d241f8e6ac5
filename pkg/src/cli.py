import sys
from typing import Any, List, Optional

from pydantic import ValidationError
from rich.markup import escape
from typer import Typer
from typer.core import TyperGroup
from typer.main import get_command

from apps.dataset.controllers import dataset_router
from apps.diagnostics.controllers import diagnostics_router
from apps.oracle.controllers import oracle_router
from apps.predictor.controllers import predictor_router
from apps.transport.controllers import transport_router
from config import settings
from core.constants import ExitCode
from core.exceptions import CustomException
from core.utils import ColoredOutput, console
from core.utils.logging_config import init_default_logging

# Initialize logging
init_default_logging()


def _click_exit_code(exc: Exception) -> Optional[int]:
    """Exit code for a click control-flow or usage exception, None for anything else.

    Matched by class name so it holds whichever click build typer runs on.
    """
    kinds = {klass.__name__ for klass in type(exc).__mro__}
    if "Exit" in kinds:
        return int(getattr(exc, "exit_code", ExitCode.SUCCESS))
    if "Abort" in kinds:
        console.print(ColoredOutput.error("Aborted"))
        return ExitCode.USAGE_ERROR
    if "ClickException" in kinds:
        exc.show()
        return ExitCode.USAGE_ERROR
    return None


class HarmonizeGroup(TyperGroup):
    """Top-level group that maps every failure to the 0/1/2 exit-code contract."""

    def main(
        self,
        args: Optional[List[str]] = None,
        prog_name: Optional[str] = None,
        complete_var: Optional[str] = None,
        standalone_mode: bool = True,
        **extra: Any,
    ) -> Any:
        try:
            result = super().main(
                args, prog_name, complete_var, standalone_mode=False, **extra
            )
            code = int(result) if isinstance(result, int) else ExitCode.SUCCESS
        except CustomException as exc:
            console.print(ColoredOutput.error(escape(str(exc.message))), highlight=False)
            code = exc.exit_code
        except ValidationError as exc:
            console.print(
                ColoredOutput.error(escape(f"Invalid arguments: {exc}")), highlight=False
            )
            code = ExitCode.USAGE_ERROR
        except Exception as exc:
            code = _click_exit_code(exc)
            if code is None:
                raise
        if standalone_mode:
            sys.exit(code)
        return code


cli = Typer(
    cls=HarmonizeGroup,
    rich_markup_mode=None,
    pretty_exceptions_show_locals=False,
    no_args_is_help=True,
    help="Fit, predict, apply and audit MKL color-transport filters.",
)


def init_routers(_cli: Typer) -> None:
    """
    Register every app's subcommands on the top-level command.

    Args:
        _cli (Typer): The top-level Typer application.
    """
    for router in (
        transport_router,
        oracle_router,
        predictor_router,
        dataset_router,
        diagnostics_router,
    ):
        _cli.registered_commands.extend(router.registered_commands)


init_routers(cli)


def run(argv: Optional[List[str]] = None) -> int:
    """
    Run one subcommand and return its exit code.

    Args:
        argv (Optional[List[str]]): Arguments without the program name.

    Returns:
        int: 0 on success, 1 on usage error, 2 on data error.
    """
    args = sys.argv[1:] if argv is None else list(argv)
    command = get_command(cli)
    return command.main(args, prog_name=settings.APP_NAME, standalone_mode=False)
