import json
import tempfile
from pathlib import Path

from django.test import SimpleTestCase

from services.measure_service import MeasureService
from services.suite_service import SuiteRunner, parse_config, read_config_file
from utils.data_classes import Certificate, ForbiddenSet, MeasureSpec
from utils.exceptions import EmitError, ParseError


def write_config(directory, text):
    path = Path(directory) / 'suite.conf'
    path.write_text(text)
    return str(path)


class ConfigTests(SimpleTestCase):

    def test_defaults(self):
        config = parse_config()
        self.assertEqual(config.base, 3)
        self.assertEqual(config.families, ['measure', 'operator', 'shift', 'bell'])
        self.assertEqual(config.emit, ['json'])

    def test_flags(self):
        config = parse_config(flags={'N': 4, 'forbidden': ['1', '1,2'], 'families': 'bell,shift',
                                     'base-depth': 1, 'depth': None})
        self.assertEqual(config.base, 4)
        self.assertEqual([f.indices for f in config.forbidden_sets()], [(1,), (1, 2)])
        self.assertEqual(config.families, ['bell', 'shift'])
        self.assertEqual(config.base_depth, 1)
        self.assertEqual(config.depth, 6)

    def test_file_then_flags(self):
        with tempfile.TemporaryDirectory() as directory:
            path = write_config(directory, '# small run\nN = 3\ndepth = 3  # K\n'
                                           'forbidden = 1\nforbidden = ""\nfloat_mode = false\n')
            self.assertEqual(read_config_file(path)['forbidden'], ['1', ''])
            config = parse_config(path, {'depth': 5})
        self.assertEqual(config.depth, 5)
        self.assertFalse(config.float_mode)
        self.assertTrue(config.forbidden_sets()[1].is_empty)

    def test_unknown_key_reports_line(self):
        with tempfile.TemporaryDirectory() as directory:
            path = write_config(directory, 'depth = 3\n\nbogus = 1\n')
            with self.assertRaises(ParseError) as raised:
                parse_config(path)
        self.assertIn('line 3', str(raised.exception))
        self.assertEqual(raised.exception.context, {'line': 3})

    def test_missing_equals(self):
        with tempfile.TemporaryDirectory() as directory:
            with self.assertRaises(ParseError):
                parse_config(write_config(directory, 'depth 3\n'))

    def test_invalid_values(self):
        for flags in ({'N': 2}, {'families': 'measure,graphs'}, {'emit': 'xml'}, {'depth': 'deep'},
                      {'float_mode': 'maybe'}, {'angles': ['circle:1/2']}, {'weights': ['bilateral;0=2']},
                      {'colour': 'red'}, {'forbidden': ['0']}):
            with self.subTest(flags=flags):
                with self.assertRaises(ParseError):
                    parse_config(flags=flags)

    def test_defaults_sit_under_file_and_flags(self):
        self.assertEqual(parse_config(defaults={'report': '/srv/reports'}).report, '/srv/reports')
        with tempfile.TemporaryDirectory() as directory:
            path = write_config(directory, f'report = {directory}\n')
            self.assertEqual(parse_config(path, defaults={'report': '/srv/reports'}).report, directory)
            self.assertEqual(parse_config(path, {'report': 'elsewhere'}, {'report': '/srv/reports'}).report,
                             'elsewhere')

    def test_missing_file(self):
        with self.assertRaises(ParseError):
            parse_config('/nonexistent/suite.conf')


class SuiteRunTests(SimpleTestCase):

    def small_config(self, **flags):
        base = {'families': 'bell,shift', 'shift_samples': 5,
                'angles': ['single:0', 'class:0@2'], 'weights': ['bilateral;0:2,1:3', 'unilateral;0:2']}
        base.update(flags)
        return parse_config(flags=base)

    def test_reports_are_byte_identical(self):
        config = self.small_config()
        first = SuiteRunner(workers=2).run_suite(config)
        second = SuiteRunner(workers=1).run_suite(config)
        runner = SuiteRunner()
        self.assertEqual(runner.render_json(first), runner.render_json(second))
        self.assertTrue(first.passed)

    def test_entries_follow_config_order(self):
        report = SuiteRunner(workers=2).run_suite(self.small_config())
        names = [e.name for e in report.entries]
        self.assertEqual(names[:3], ['bell_phi_homomorphism', 'bell_conjugation_identity', 'bell_determinant_unit'])
        self.assertEqual(names[3:6], ['diagonal_examples', 'orbit_properties', 'shift_properties'])
        self.assertIn('diag_decision[1]', names)
        self.assertIn('shift_decision[0]', names)
        self.assertEqual(set(report.timings), {f"{e.family}/{e.name}" for e in report.entries})

    def test_json_has_summary(self):
        runner = SuiteRunner()
        data = json.loads(runner.render_json(runner.run_suite(self.small_config(families='bell'))))
        self.assertEqual(data['summary'], {'executed': 3, 'passed': 3, 'skipped': 0, 'all_passed': True})
        self.assertEqual(data['version'], '1.0.0')

    def test_measure_family_with_tables(self):
        config = parse_config(flags={'families': 'measure', 'depth': 2, 'base_depth': 1, 'resolution': 2,
                                     'emit': 'json,csv'})
        report = SuiteRunner().run_suite(config)
        self.assertTrue(report.passed)
        self.assertEqual(sorted(report.tables), ['cdf_B-1', 'weights_B-1'])
        self.assertEqual(len(report.tables['weights_B-1'].splitlines()), 14)
        cdf = MeasureService().build_cdf(MeasureSpec(ForbiddenSet((1,), 3), 'nu', 2, 1))
        self.assertEqual(len(report.tables['cdf_B-1'].splitlines()), len(cdf) + 1)

    def test_singularity_skipped_for_empty_set(self):
        config = parse_config(flags={'families': 'measure', 'forbidden': [''], 'depth': 2, 'base_depth': 1,
                                     'resolution': 2})
        report = SuiteRunner().run_suite(config)
        skipped = [e.name for e in report.entries if not e.executed]
        self.assertEqual(skipped, ['singularity[B-empty]'])
        self.assertTrue(report.passed)

    def test_cap_skips_large_certificates(self):
        config = parse_config(flags={'families': 'measure', 'depth': 2, 'base_depth': 2, 'resolution': 2,
                                     'cap': 10})
        report = SuiteRunner().run_suite(config)
        summary = report.to_dict()['summary']
        self.assertGreater(summary['skipped'], 0)
        self.assertTrue(report.passed)

    def test_emit(self):
        config = self.small_config(families='bell', emit='json,csv')
        runner = SuiteRunner()
        report = runner.run_suite(config)
        with tempfile.TemporaryDirectory() as directory:
            paths = runner.emit_report(report, destination=directory)
            self.assertEqual([p.name for p in paths], ['report.json', 'timings.json'])
            self.assertEqual((Path(directory) / 'report.json').read_text(), runner.render_json(report))
            timings = json.loads((Path(directory) / 'timings.json').read_text())
            self.assertEqual(len(timings), 3)

    def test_emit_error(self):
        runner = SuiteRunner()
        report = runner.run_suite(self.small_config(families='bell'))
        with tempfile.TemporaryDirectory() as directory:
            blocker = Path(directory) / 'taken'
            blocker.write_text('')
            with self.assertRaises(EmitError):
                runner.emit_report(report, destination=str(blocker))


class TaskIsolationTests(SimpleTestCase):

    def test_unexpected_exception_is_recorded(self):
        def healthy():
            cert = Certificate('healthy', {})
            cert.check('one is one', 1, '==', 1)
            return cert

        results = SuiteRunner()._run_family('operator', [('broken', lambda: 1 / 0), ('after', healthy)])
        entries = [entry for entry, _ in results]
        self.assertEqual([e.name for e in entries], ['broken', 'after'])
        self.assertEqual(entries[0].error['error'], 'internal-error')
        self.assertIn('ZeroDivisionError', entries[0].error['detail'])
        self.assertTrue(entries[0].executed)
        self.assertFalse(entries[0].passed)
        self.assertTrue(entries[1].passed)

    def test_report_marks_suite_failed(self):
        runner = SuiteRunner()
        runner.bell_tasks = lambda cfg: [('bell_broken', lambda: {}['missing'])]
        report = runner.run_suite(parse_config(flags={'families': 'bell,shift', 'shift_samples': 2}))
        self.assertFalse(report.passed)
        self.assertEqual(report.entries[0].error['error'], 'internal-error')
        self.assertTrue(any(e.name == 'shift_properties' and e.passed for e in report.entries))
        data = json.loads(runner.render_json(report))
        self.assertEqual(data['summary']['all_passed'], False)
