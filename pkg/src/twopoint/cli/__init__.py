from twopoint.cli.commands import CommandResult, ExitCode, cmd_extract, cmd_invert, cmd_verify
from twopoint.cli.config import RunConfig, load_config

__all__ = ("CommandResult", "ExitCode", "RunConfig", "cmd_extract", "cmd_invert", "cmd_verify", "load_config")
