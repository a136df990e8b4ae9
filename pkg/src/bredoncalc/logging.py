"""The bredoncalc library logger.

Library modules log through `logger` and never attach handlers of their own.
Applications opt in:

    import logging
    logging.getLogger("bredoncalc").setLevel(logging.DEBUG)

Debug records trace complexes built, levels evaluated and pages turned;
warnings flag rerouted queries and unexcluded higher differentials.
"""

import logging

logger = logging.getLogger("bredoncalc")
logger.addHandler(logging.NullHandler())

CLI_FORMAT = "%(levelname)s %(name)s: %(message)s"


def configure_cli_logging(verbose: bool) -> None:
    """Send every record to stderr when the CLI runs with --verbose; otherwise stay silent."""
    if verbose:
        logging.basicConfig(level=logging.DEBUG, format=CLI_FORMAT)
