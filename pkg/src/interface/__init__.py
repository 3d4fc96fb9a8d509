from .instance_file import InstanceFormatError, parse_instance, serialize_instance
from .generators import gen_figure1, gen_random
from .reports import RunReport

__all__ = ['InstanceFormatError', 'parse_instance', 'serialize_instance', 'gen_figure1', 'gen_random', 'RunReport']
