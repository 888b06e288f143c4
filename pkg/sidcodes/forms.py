# Input validation for the command line, run before any computation.
import re

from wtforms import Form, IntegerField, SelectField, StringField
from wtforms.validators import DataRequired, NumberRange, ValidationError

from sidcodes.solver import PruningRule

TOPOLOGY_CHOICES = [('path', 'path'), ('cycle', 'cycle')]
RANGE_PATTERN = re.compile(r'^\s*(\d+)\s*(?:(?:\.\.|-)\s*(\d+))?\s*$')


def parse_range(text):
    """'3..5', '3-5' or '4' as a list of integers; None if malformed."""
    match = RANGE_PATTERN.match(text or '')
    if not match:
        return None
    low = int(match.group(1))
    high = int(match.group(2)) if match.group(2) else low
    return list(range(low, high + 1))


class GraphForm(Form):
    m = IntegerField('m', validators=[DataRequired(), NumberRange(min=1, message='m must be at least 1.')])
    n = IntegerField('n', validators=[DataRequired(), NumberRange(min=2, message='n must be at least 2.')])
    topology = SelectField('topology', choices=TOPOLOGY_CHOICES)

    def validate_n(self, n):
        if self.topology.data == 'cycle' and n.data is not None and n.data < 3:
            raise ValidationError('A cycle needs at least 3 columns.')


class ConstructForm(GraphForm):
    m = IntegerField('m', validators=[DataRequired(), NumberRange(min=3, message='Constructions need m >= 3.')])
    n = IntegerField('n', validators=[DataRequired(), NumberRange(min=3, message='Constructions need n >= 3.')])


class SolveForm(GraphForm):
    max_nodes = IntegerField('max_nodes')
    workers = IntegerField('workers')
    pruning = StringField('pruning')

    def validate_max_nodes(self, max_nodes):
        if max_nodes.data is not None and max_nodes.data < 1:
            raise ValidationError('max_nodes must be at least 1.')

    def validate_workers(self, workers):
        if workers.data is not None and workers.data < 1:
            raise ValidationError('workers must be at least 1.')

    def validate_pruning(self, pruning):
        if not pruning.data or pruning.data == 'none':
            return
        known = {rule.value for rule in PruningRule}
        unknown = [name for name in pruning.data.split(',') if name.strip() not in known]
        if unknown:
            raise ValidationError(f'Unknown pruning rules: {", ".join(unknown)}.')

    def rules(self):
        if not self.pruning.data:
            return frozenset(PruningRule)
        if self.pruning.data == 'none':
            return frozenset()
        return frozenset(PruningRule(name.strip()) for name in self.pruning.data.split(','))


class SweepForm(Form):
    m_range = StringField('m', validators=[DataRequired()])
    n_range = StringField('n', validators=[DataRequired()])
    topology = SelectField('topology', choices=TOPOLOGY_CHOICES)

    def validate_m_range(self, m_range):
        values = parse_range(m_range.data)
        if not values:
            raise ValidationError('The m range is empty or malformed.')
        if values[0] < 3:
            raise ValidationError('Sweeps need m >= 3.')

    def validate_n_range(self, n_range):
        values = parse_range(n_range.data)
        if not values:
            raise ValidationError('The n range is empty or malformed.')
        if values[0] < 3:
            raise ValidationError('Sweeps need n >= 3.')


class RandomSubsetsForm(GraphForm):
    count = IntegerField('count', validators=[DataRequired(), NumberRange(min=1, max=10**6)])
