VERBOSE_LOGGING_FORMAT = "%(asctime)s [%(module)s:%(lineno)s in %(funcName)s] %(message)s"
LOGGING_FORMAT = "[%(levelname)s] %(message)s"
BARE_LOGGING_FORMAT = "%(message)s"


def set_level(level: int, *, echo_setting: bool = True) -> None:
    import logging
    import time

    from rich.logging import RichHandler

    from biqbracket.cli_cmds.console import console

    def handler() -> RichHandler:
        return RichHandler(rich_tracebacks=True, markup=False, console=console, show_path=False, show_time=False)

    if level == logging.DEBUG:
        logging.Formatter.converter = time.gmtime
        logging.basicConfig(level=level, handlers=[handler()], format=VERBOSE_LOGGING_FORMAT, force=True)
    else:
        logging.basicConfig(level=level, handlers=[handler()], format=BARE_LOGGING_FORMAT, force=True)
    logging.getLogger().setLevel(level)
    if echo_setting:
        logging.getLogger("rich").debug("Verbose DEBUG logging enabled")
