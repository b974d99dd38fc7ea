from argparse import ArgumentParser


def add_state_arguments(parser: ArgumentParser) -> None:
    parser.add_argument("--family", choices=("mcs-mis", "bds"), help="Семейство состояний")
    parser.add_argument("--p", type=float, help="Вес MCS в смеси MCS/MIS")
    parser.add_argument("--beta", help="β-координаты BDS через запятую, например 0.2,0.43,-0.2")
    parser.add_argument("--bloch", help="JSON-файл {x, y, T} или {beta}")
    parser.add_argument("--density", help="JSON-файл с матрицей 4×4 из пар [re, im]")


def add_machine_arguments(parser: ArgumentParser) -> None:
    parser.add_argument("--mode", choices=("local", "nonlocal"), help="Режим клонирования")
    group = parser.add_mutually_exclusive_group()
    group.add_argument("--lambda", dest="lambda_", type=float, help="Параметр машины λ")
    group.add_argument("--si", action="store_true", help="Состояние-независимая машина (по умолчанию)")


def add_output_arguments(parser: ArgumentParser, emit: bool = True) -> None:
    if emit:
        parser.add_argument("--emit", choices=("csv", "json"), help="Формат вывода")
    parser.add_argument("--out", help="Файл для результата; по умолчанию stdout")
