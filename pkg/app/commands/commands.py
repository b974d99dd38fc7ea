from argparse import ArgumentParser

from app.commands import clone, coherence, crosscheck, region, tables, verify


def include_commands(parser: ArgumentParser) -> None:
    subparsers = parser.add_subparsers(dest="command", required=True)
    coherence.register(subparsers)
    clone.register(subparsers)
    tables.register(subparsers)
    verify.register(subparsers)
    region.register(subparsers)
    crosscheck.register(subparsers)


def build_parser() -> ArgumentParser:
    parser = ArgumentParser(prog="coherence-broadcast", description="Вещание когерентности клонерами Бужека–Хиллери")
    parser.add_argument("--verbose", action="store_true", help="Подробный лог (DEBUG)")
    parser.add_argument("--log-config", help="INI-файл конфигурации логирования")
    include_commands(parser)
    return parser
