import json
import tempfile
from io import StringIO
from pathlib import Path

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase, override_settings

from utils.exact import ExactMatrix


def run(*args):
    out = StringIO()
    call_command(*args, stdout=out)
    return json.loads(out.getvalue())


class CommandTests(SimpleTestCase):

    def test_bell_verify(self):
        data = run('bell', 'verify')
        self.assertTrue(all(c['passed'] for c in data['certificates']))

    def test_suite_report_dir_from_settings(self):
        with tempfile.TemporaryDirectory() as directory:
            with override_settings(JNLAB_REPORT_DIR=directory):
                data = run('suite', '--families', 'bell')
            self.assertTrue((Path(directory) / 'report.json').exists())
        self.assertEqual(data['files'][0], str(Path(directory) / 'report.json'))

    def test_suite_writes_report(self):
        with tempfile.TemporaryDirectory() as directory:
            data = run('suite', '--families', 'bell', '--report', directory)
            self.assertTrue(data['summary']['all_passed'])
            self.assertTrue((Path(directory) / 'report.json').exists())

    def test_suite_rejects_small_base(self):
        with self.assertRaises(CommandError):
            call_command('suite', '--N', '2', stdout=StringIO())

    def test_measure_with_tables(self):
        with tempfile.TemporaryDirectory() as directory:
            data = run('measure', '--depth', '2', '--base-depth', '1', '--resolution', '2',
                       '--emit', 'json,csv', '--report', directory)
            self.assertTrue(data['summary']['all_passed'])
            self.assertTrue((Path(directory) / 'cdf_B-1.csv').exists())
            self.assertTrue((Path(directory) / 'weights_B-1.csv').exists())

    def test_diag(self):
        data = run('diag', '--angles', 'single:0', '--angles', 'class:0@2', '--n', '2')
        self.assertEqual([d['stable'] for d in data['decisions']], [False, True])

    def test_diag_bad_angles(self):
        with self.assertRaises(CommandError):
            call_command('diag', '--angles', 'single:one', stdout=StringIO())

    def test_shift_decisions(self):
        data = run('shift', '--weights', 'bilateral;0:2,1:3', '--weights', 'bilateral;4:2', '--k', '2')
        self.assertEqual([r['decision']['stable'] for r in data['results']], [False, True])
        self.assertEqual(len(data['results'][1]['k_spectrum']), 3)

    def test_shift_compare_and_descriptors(self):
        data = run('shift', '--weights', 'bilateral;0:2', '--compare', 'bilateral;5:2', '--k', '3',
                   '--descriptor', 'normal:disk', '--descriptor', 'isometry:1+single:0')
        first, disk, isometry = data['results']
        self.assertTrue(first['k_spectra_agree'])
        self.assertIsNone(first['first_differing_k'])
        self.assertFalse(disk['decision']['stable'])
        self.assertEqual(isometry['decision']['witness'], '1/2')

    def test_shift_bad_descriptor(self):
        with self.assertRaises(CommandError):
            call_command('shift', '--descriptor', 'isometry:two', stdout=StringIO())

    def test_op_on_matrix_files(self):
        with tempfile.TemporaryDirectory() as directory:
            a, b = Path(directory) / 'a.json', Path(directory) / 'b.json'
            a.write_text(ExactMatrix.diagonal([1, 2]).to_json())
            b.write_text(ExactMatrix.from_rows([[1, 1], [0, 2]]).to_json())
            data = run('op', '--a', str(a), '--b', str(b))
        self.assertTrue(data['similar'])
        self.assertTrue(data['root_identity']['passed'])
        self.assertFalse(data['specht']['equivalent'])

    def test_op_halving(self):
        with tempfile.TemporaryDirectory() as directory:
            a = Path(directory) / 'a.json'
            a.write_text(ExactMatrix.zeros(2).to_json())
            data = run('op', '--a', str(a))
        self.assertEqual(data['halved']['factors'], ['x'])

    def test_op_family_from_config(self):
        with tempfile.TemporaryDirectory() as directory:
            config = Path(directory) / 'op.conf'
            config.write_text(f'operator_samples = 1\nreport = {directory}\n')
            data = run('op', '--config', str(config))
        self.assertTrue(data['summary']['all_passed'])
