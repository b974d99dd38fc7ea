import sys
from typing import Optional, Sequence

from pydantic import ValidationError

from app.commands.commands import build_parser
from app.schemas.config import RunConfig
from app.utils.errors import CommandError, InvalidStateError
from app.utils.log_config import setup_logging

CLI_ONLY = ("handler", "verbose", "log_config")


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    setup_logging(args.log_config, args.verbose)
    values = {key: value for key, value in vars(args).items() if key not in CLI_ONLY and value is not None}
    try:
        try:
            config = RunConfig(**values)
        except ValidationError as exc:
            raise InvalidStateError(f"Некорректные параметры: {exc}")
        return args.handler(config)
    except CommandError as exc:
        print(exc.detail, file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
