from .main import main
from .parser import build_parser
from .commands import COMMANDS, learner_spec, grow_config
from .bench import BENCH_CASES, bench, time_case, write_bench
from .exceptions import CommandError

__all__ = ['main', 'build_parser', 'COMMANDS', 'learner_spec', 'grow_config', 'BENCH_CASES', 'bench',
           'time_case', 'write_bench', 'CommandError']
