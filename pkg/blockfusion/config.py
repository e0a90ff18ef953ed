# coding: utf-8
"""Experiment configuration files.

An experiment is an INI document::

    [fusion]
    scheme = block
    input_dims = 16 16
    output_dim = 4
    block_dims = 2 2 2
    rank = 4

    [teacher]
    scheme = block
    input_dims = 16 16
    output_dim = 4
    block_dims = 2 2 2
    rank = 4

    [task]
    kind = regression
    n_train = 2000
    n_val = 500
    n_test = 500

    [train]
    max_epochs = 500

    [output]
    path = run.csv

Composite specs set ``branches = <n>`` instead of ``input_dims`` and describe
each branch in a child section, ``[fusion.0]``, ``[fusion.1]`` and so on.
"""
from __future__ import absolute_import, division, print_function

import io
import re
from configparser import ConfigParser, Error as ConfigParserError

from represent import ReprHelperMixin

from .exceptions import ConfigError, SpecError
from .spec import FusionSpec
from .train import SyntheticTaskSpec, TrainConfig

_SPEC_KEYS = {
    'scheme': str,
    'input_dims': 'pair',
    'output_dim': int,
    'block_dims': 'triple',
    'rank': int,
    'slice_rank': int,
    'factor_rank': int,
    'pooled_dim': int,
    'depth': int,
    'sketch_dim': int,
    'seed': int,
    'hidden': int,
    'branches': int,
}

_TASK_KEYS = {
    'kind': str,
    'noise_std': float,
    'n_train': int,
    'n_val': int,
    'n_test': int,
    'data_seed': int,
    'teacher_seed': int,
}

_TRAIN_KEYS = {
    'learning_rate': float,
    'batch_size': int,
    'beta1': float,
    'beta2': float,
    'epsilon': float,
    'max_epochs': int,
    'patience': int,
    'loss': str,
    'seed': int,
}

_OUTPUT_KEYS = {'path': str}

_REQUIRED = {
    'task': ('kind', 'n_train', 'n_val', 'n_test'),
    'train': (),
    'output': ('path',),
}

_SECTION_RE = re.compile(r'^\s*\[([^\]]+)\]')
_KEY_RE = re.compile(r'^(\s*)([^\s=:;#][^=:]*?)\s*[=:]\s*')


class _Locator(object):
    """Line and column of every section header, key and value in the raw text."""

    def __init__(self, text):
        self.sections = {}
        self.keys = {}
        self.values = {}
        section = None
        lines = text.splitlines()
        self.end = (max(len(lines), 1), 1)
        for lineno, line in enumerate(lines, 1):
            match = _SECTION_RE.match(line)
            if match:
                section = match.group(1).strip()
                self.sections[section] = (lineno, line.index('[') + 1)
                continue
            match = _KEY_RE.match(line)
            if match and section is not None:
                key = match.group(2).strip().lower()
                self.keys[section, key] = (lineno, len(match.group(1)) + 1)
                self.values[section, key] = (lineno, match.end() + 1)

    def section(self, name):
        return self.sections.get(name, (None, None))

    def key(self, section, key):
        return self.keys.get((section, key), self.section(section))

    def value(self, section, key):
        return self.values.get((section, key), self.section(section))


def _error(message, position):
    lineno, colno = position
    return ConfigError(message, lineno=lineno, colno=colno)


def _convert(kind, raw):
    if kind == 'pair' or kind == 'triple':
        size = 2 if kind == 'pair' else 3
        parts = raw.split()
        if len(parts) != size:
            raise ValueError('expected {} integers'.format(size))
        return tuple(int(p) for p in parts)
    return kind(raw)


def _read_section(parser, locator, name, schema, required=()):
    if not parser.has_section(name):
        raise _error('missing section [{}]'.format(name), locator.end)
    values = {}
    for key, raw in parser.items(name):
        if key not in schema:
            raise _error('unknown key {!r} in [{}]'.format(key, name),
                         locator.key(name, key))
        try:
            values[key] = _convert(schema[key], raw)
        except ValueError as exc:
            raise _error('bad value {!r} for {}: {}'.format(raw, key, exc),
                         locator.value(name, key))
    for key in required:
        if key not in values:
            raise _error('missing key {!r} in [{}]'.format(key, name),
                         locator.section(name))
    return values


def _read_spec(parser, locator, name):
    values = _read_section(parser, locator, name, _SPEC_KEYS, ('scheme', 'output_dim'))
    try:
        if values['scheme'] == 'composite':
            if 'branches' not in values:
                raise SpecError('composite specs need branches')
            extra = sorted(set(values) - {'scheme', 'branches', 'output_dim'})
            if extra:
                raise SpecError('composite does not take {}'.format(', '.join(extra)))
            children = [_read_spec(parser, locator, '{}.{}'.format(name, i))
                        for i in range(values.pop('branches'))]
            return FusionSpec.composite(children, values['output_dim'])
        if 'branches' in values:
            raise SpecError('only composite specs take branches')
        if 'input_dims' not in values:
            raise SpecError('missing key \'input_dims\' in [{}]'.format(name))
        return FusionSpec(**values)
    except SpecError as exc:
        raise _error(str(exc), locator.section(name))


def _spec_sections(spec, name):
    """Yield ``(section, items)`` for `spec` and, recursively, its branches."""
    items = [('scheme', spec.scheme)]
    if spec.scheme == 'composite':
        items.append(('branches', len(spec.children)))
    else:
        items.append(('input_dims', '{} {}'.format(*spec.input_dims)))
    items.append(('output_dim', spec.output_dim))
    for option, value in spec.options():
        if option == 'block_dims':
            value = '{} {} {}'.format(*value)
        items.append((option, value))
    yield name, items
    for i, child in enumerate(spec.children):
        for section in _spec_sections(child, '{}.{}'.format(name, i)):
            yield section


class ExperimentConfig(ReprHelperMixin, object):
    """Student spec, task, training settings and output path of one experiment.

    .. attribute:: fusion

       Student :py:class:`~blockfusion.spec.FusionSpec`.

    .. attribute:: task

       :py:class:`~blockfusion.train.SyntheticTaskSpec`, including the teacher.

    .. attribute:: train

       :py:class:`~blockfusion.train.TrainConfig`.

    .. attribute:: output_path

       Where the CSV is written.

    """
    __slots__ = ('fusion', 'task', 'train', 'output_path')

    def __init__(self, fusion, task, train, output_path):
        self.fusion = fusion
        self.task = task
        self.train = train
        self.output_path = output_path

    @classmethod
    def loads(cls, text, source='<string>'):
        """Parse and schema-check a config document.

        Raises:
            ~blockfusion.exceptions.ConfigError: Syntax errors, unknown or
                missing sections and keys, and invalid values, with the line
                and column where the problem is.
        """
        parser = ConfigParser(interpolation=None)
        try:
            parser.read_string(text, source=source)
        except ConfigParserError as exc:
            lineno = getattr(exc, 'lineno', None)
            errors = getattr(exc, 'errors', None)
            if lineno is None and errors:
                lineno = errors[0][0]
            raise ConfigError('cannot parse {}: {}'.format(source, exc.message),
                              lineno=lineno, colno=1)

        locator = _Locator(text)
        known = ('fusion', 'teacher', 'task', 'train', 'output')
        for section in parser.sections():
            root = section.split('.', 1)[0]
            if root not in known or (section != root and root not in ('fusion', 'teacher')):
                raise _error('unknown section [{}]'.format(section),
                             locator.section(section))

        fusion = _read_spec(parser, locator, 'fusion')
        teacher = _read_spec(parser, locator, 'teacher')
        used = set()
        for root, spec in (('fusion', fusion), ('teacher', teacher)):
            used.update(name for name, _ in _spec_sections(spec, root))
        for section in parser.sections():
            if section not in used and section.split('.', 1)[0] in ('fusion', 'teacher'):
                raise _error('section [{}] belongs to no composite'.format(section),
                             locator.section(section))

        task = _read_section(parser, locator, 'task', _TASK_KEYS, _REQUIRED['task'])
        try:
            task = SyntheticTaskSpec(
                teacher,
                task_kind=task.pop('kind'),
                **task)
        except SpecError as exc:
            raise _error(str(exc), locator.section('task'))
        if (fusion.input_dims, fusion.output_dim) != (teacher.input_dims,
                                                      teacher.output_dim):
            raise _error('student {} and teacher {} differ in dimensions'.format(
                fusion.summary(), teacher.summary()), locator.section('fusion'))

        train = _read_section(parser, locator, 'train', _TRAIN_KEYS) \
            if parser.has_section('train') else {}
        betas = (train.pop('beta1', 0.9), train.pop('beta2', 0.999))
        try:
            train = TrainConfig(betas=betas, **train)
        except SpecError as exc:
            raise _error(str(exc), locator.section('train'))

        output = _read_section(parser, locator, 'output', _OUTPUT_KEYS,
                               _REQUIRED['output'])
        return cls(fusion, task, train, output['path'])

    @classmethod
    def load(cls, path):
        with io.open(path, encoding='utf-8') as f:
            return cls.loads(f.read(), source=path)

    def dumps(self):
        """Serialize to a document that :py:meth:`loads` parses back to an
        equal config.
        """
        sections = list(_spec_sections(self.fusion, 'fusion'))
        sections.extend(_spec_sections(self.task.teacher, 'teacher'))
        task = self.task
        sections.append(('task', [
            ('kind', task.task_kind),
            ('noise_std', repr(task.noise_std)),
            ('n_train', task.n_train),
            ('n_val', task.n_val),
            ('n_test', task.n_test),
            ('data_seed', task.data_seed),
            ('teacher_seed', task.teacher_seed),
        ]))
        train = self.train
        items = [
            ('learning_rate', repr(train.learning_rate)),
            ('batch_size', train.batch_size),
            ('beta1', repr(train.betas[0])),
            ('beta2', repr(train.betas[1])),
            ('epsilon', repr(train.epsilon)),
            ('max_epochs', train.max_epochs),
            ('patience', train.patience),
        ]
        if train.loss is not None:
            items.append(('loss', train.loss))
        items.append(('seed', train.seed))
        sections.append(('train', items))
        sections.append(('output', [('path', self.output_path)]))

        blocks = []
        for name, items in sections:
            lines = ['[{}]'.format(name)]
            lines.extend('{} = {}'.format(key, value) for key, value in items)
            blocks.append('\n'.join(lines))
        return '\n\n'.join(blocks) + '\n'

    def _repr_helper_(self, r):
        r.keyword_from_attr('fusion')
        r.keyword_from_attr('task')
        r.keyword_from_attr('train')
        r.keyword_from_attr('output_path')

    def __eq__(self, other):
        if isinstance(other, ExperimentConfig):
            params = ('fusion', 'task', 'train', 'output_path')
            return all(getattr(self, p) == getattr(other, p) for p in params)
        else:
            return NotImplemented

    __hash__ = None
