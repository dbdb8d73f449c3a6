"""
Suite configuration, execution and report emission
"""
import json
import logging
import time
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Dict, Iterable, List, Optional, Tuple

import numpy as np

from services.bell_service import BellRingVerifier
from services.certificate_service import CertificateService
from services.diagonal_service import DiagonalLab
from services.measure_service import MeasureService
from services.operator_service import OperatorLab
from services.shift_service import ShiftLab
from utils.constants import ERROR_MESSAGES, FAMILIES, LAB_DEFAULTS, TOOL_VERSION
from utils.data_classes import (
    Angle,
    AngleSet,
    Certificate,
    Decision,
    ForbiddenSet,
    MeasureSpec,
    Report,
    SuiteConfig,
    SuiteEntry,
)
from utils.exceptions import EmitError, EnumerationTooLarge, LabError, ParseError
from utils.helpers import parse_angle_set, parse_weight_seq, serialize

logger = logging.getLogger(__name__)

Task = Tuple[str, Callable[[], Certificate]]

# Config keys accepted in files and flags, with their field names
CONFIG_KEYS = {
    'N': 'base',
    'forbidden': 'forbidden',
    'depth': 'depth',
    'base_depth': 'base_depth',
    'resolution': 'resolution',
    'n': 'n',
    'seed': 'seed',
    'cap': 'cap',
    'families': 'families',
    'operator_samples': 'operator_samples',
    'shift_samples': 'shift_samples',
    'angles': 'angles',
    'weights': 'weights',
    'emit': 'emit',
    'report': 'report',
    'float_mode': 'float_mode',
}

# Keys that accumulate when repeated
REPEATED_KEYS = ('forbidden', 'angles', 'weights')
LIST_KEYS = ('families', 'emit')
BOOL_KEYS = ('float_mode',)
STRING_KEYS = ('report',)

EMIT_FORMATS = ('json', 'csv')


def _convert(key: str, value: Any, context: str) -> Any:
    name = CONFIG_KEYS[key]
    if name in REPEATED_KEYS:
        return [str(v) for v in value] if isinstance(value, (list, tuple)) else [str(value)]
    if name in LIST_KEYS:
        if isinstance(value, (list, tuple)):
            return [str(v) for v in value]
        return [part.strip() for part in str(value).split(',') if part.strip()]
    if name in BOOL_KEYS:
        if isinstance(value, bool):
            return value
        text = str(value).strip().lower()
        if text not in ('true', 'false', '1', '0', 'yes', 'no'):
            raise ParseError(f"{context}: {key} must be true or false")
        return text in ('true', '1', 'yes')
    if name in STRING_KEYS:
        return str(value)
    try:
        return int(value)
    except (TypeError, ValueError):
        raise ParseError(f"{context}: {key} must be an integer, got {value!r}")


def read_config_file(path: str) -> Dict[str, Any]:
    """Flat key = value lines; # starts a comment; repeated list keys accumulate"""
    values: Dict[str, Any] = {}
    try:
        lines = Path(path).read_text().splitlines()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}")
    for number, raw in enumerate(lines, start=1):
        line = raw.split('#', 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition('=')
        key, value = key.strip().replace('-', '_'), value.strip()
        if not sep:
            raise ParseError(f"line {number}: expected key = value", {'line': number})
        if key not in CONFIG_KEYS:
            raise ParseError(f"line {number}: unknown key {key!r}", {'line': number})
        if value.startswith('"') and value.endswith('"') and len(value) >= 2:
            value = value[1:-1]
        converted = _convert(key, value, f"line {number}")
        if CONFIG_KEYS[key] in REPEATED_KEYS:
            values.setdefault(key, []).extend(converted)
        else:
            values[key] = converted
    return values


def parse_config(path: Optional[str] = None, flags: Optional[Dict[str, Any]] = None,
                 defaults: Optional[Dict[str, Any]] = None) -> SuiteConfig:
    """Defaults, then file values, then flags; validation errors become parse errors"""
    values = {key: _convert(key, value, f"default {key}")
              for key, value in (defaults or {}).items() if value is not None}
    if path:
        values.update(read_config_file(path))
    for key, value in (flags or {}).items():
        key = key.replace('-', '_')
        if value is None:
            continue
        if key not in CONFIG_KEYS:
            raise ParseError(f"flag --{key}: unknown option", {'flag': key})
        values[key] = _convert(key, value, f"flag --{key}")
    kwargs = {CONFIG_KEYS[key]: value for key, value in values.items()}
    unknown_families = [f for f in kwargs.get('families', []) if f not in FAMILIES]
    if unknown_families:
        raise ParseError(f"unknown families {unknown_families}", {'families': unknown_families})
    unknown_formats = [f for f in kwargs.get('emit', []) if f not in EMIT_FORMATS]
    if unknown_formats:
        raise ParseError(f"unknown emit formats {unknown_formats}")
    try:
        config = SuiteConfig(**kwargs)
        config.forbidden_sets()
        for text in config.angles:
            parse_angle_set(text)
        for text in config.weights:
            parse_weight_seq(text)
    except LabError as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(exc.detail or str(exc))
    logger.debug(f"Parsed config {config.to_dict()}")
    return config


class SuiteRunner:
    """
    Service running certificate families in a worker pool. Families run
    concurrently; tasks inside a family run in order so seeded randomness
    is reproducible, and the report keeps config order.
    """

    def __init__(self, workers: int = 1):
        self.workers = max(1, workers)

    # measure family

    def measure_tasks(self, cfg: SuiteConfig, tables: Dict[str, str]) -> List[Task]:
        measures = MeasureService(cap=cfg.cap)
        certificates = CertificateService(measures)
        tasks: List[Task] = []
        for forbidden in cfg.forbidden_sets():
            label = forbidden.label
            tasks += [
                (f"weights[{label}]", lambda f=forbidden: certificates.weights_certificate(f, cfg.depth)),
                (f"w1_cauchy[{label}]",
                 lambda f=forbidden: certificates.w1_cauchy_certificate(f, cfg.depth, cfg.base_depth)),
                (f"translation[{label}]",
                 lambda f=forbidden: certificates.translation_certificate(f, cfg.resolution, cfg.base_depth)),
                (f"continuity[{label}]", lambda f=forbidden: certificates.continuity_certificate(f, cfg.depth)),
                (f"singularity[{label}]", lambda f=forbidden: self._singularity(certificates, f)),
                (f"circle_stability[{label}]",
                 lambda f=forbidden: certificates.circle_stability_certificate(f, f.base, cfg.resolution)),
                (f"non_atomicity[{label}]",
                 lambda f=forbidden: certificates.non_atomicity_certificate(f, cfg.resolution)),
                (f"support[{label}]", lambda f=forbidden: certificates.support_certificate(f, cfg.resolution)),
            ]
            if 'csv' in cfg.emit:
                tasks.append((f"tables[{label}]",
                              lambda f=forbidden: self._tables(measures, f, cfg, tables)))
        tasks.append(('printed_bound_discrepancy', lambda: certificates.printed_bound_discrepancy(cfg.base)))
        return tasks

    def _singularity(self, certificates: CertificateService, forbidden: ForbiddenSet) -> Certificate:
        if forbidden.is_empty:
            raise _Skip('singularity needs a nonempty forbidden set')
        empty = ForbiddenSet((), forbidden.base)
        return certificates.singularity_certificate(
            forbidden, empty, forbidden.indices[0], LAB_DEFAULTS['SINGULARITY_K'],
            LAB_DEFAULTS['SINGULARITY_N'], LAB_DEFAULTS['E_DEPTH'])

    def _tables(self, measures: MeasureService, forbidden: ForbiddenSet, cfg: SuiteConfig,
                tables: Dict[str, str]) -> Certificate:
        cdf = measures.build_cdf(MeasureSpec(forbidden, 'nu', cfg.depth, cfg.base_depth))
        tables[f"cdf_{forbidden.label}"] = cdf.to_csv()
        tables[f"weights_{forbidden.label}"] = measures.table(forbidden).to_csv(cfg.depth)
        cert = Certificate('tables', {'B': forbidden.label, 'depth': cfg.depth, 'base_depth': cfg.base_depth})
        cert.check('CDF rows equal breakpoints', len(cdf.rows()), '==', len(cdf))
        cert.check('CDF is monotone', cdf.is_monotone(), '==', True)
        cert.check('CDF total mass', cdf.total, '==', Fraction(1))
        return cert

    # operator family

    def operator_tasks(self, cfg: SuiteConfig) -> List[Task]:
        lab = OperatorLab(seed=cfg.seed, float_mode=cfg.float_mode)
        return lab.family_tasks(cfg.operator_samples, cfg.n)

    # shift and diagonal family

    def shift_tasks(self, cfg: SuiteConfig) -> List[Task]:
        diagonal = DiagonalLab(enumeration_cap=cfg.cap)
        shifts = ShiftLab(diagonal, depth=cfg.depth)
        n = max(cfg.n, 2)
        tasks: List[Task] = [
            ('diagonal_examples', lambda: self._diagonal_examples(diagonal, n)),
            ('orbit_properties', lambda: self._orbit_properties(diagonal, cfg)),
            ('shift_properties', lambda: self._shift_properties(shifts, cfg)),
        ]
        for index, text in enumerate(cfg.angles):
            tasks.append((f"diag_decision[{index}]", lambda t=text: self._diag_decision(diagonal, t, n, cfg.depth)))
        for index, text in enumerate(cfg.weights):
            tasks.append((f"shift_decision[{index}]", lambda t=text: self._shift_decision(shifts, t, n)))
        return tasks

    def _diagonal_examples(self, diagonal: DiagonalLab, n: int) -> Certificate:
        cert = Certificate('diagonal_examples', {'n': 2})
        depth = 4
        dyadic = diagonal.diag_stability_decide(parse_angle_set('class:0@2'), 2, depth)
        identity = diagonal.diag_stability_decide(parse_angle_set('single:0'), 2, depth)
        rotated = diagonal.diag_stability_decide(parse_angle_set('single:1/3 class:0@2+1/3'), 2, depth)
        cert.check('S_2(0) is stable', dyadic.stable, '==', True)
        cert.check('identity is not stable', identity.stable, '==', False)
        cert.check('identity misses 1/2', identity.witness, '==', Angle(Fraction(1, 2)))
        cert.check('rotated class misses 1/6', rotated.witness, '==', Angle(Fraction(1, 6)))
        cert.quantities['decisions'] = [dyadic, identity, rotated]
        return cert

    def _orbit_properties(self, diagonal: DiagonalLab, cfg: SuiteConfig) -> Certificate:
        rng = np.random.default_rng(cfg.seed)
        n = max(cfg.n, 2)
        cert = Certificate('orbit_properties', {'n': n, 'samples': cfg.shift_samples, 'seed': cfg.seed})
        nested = verified = symmetric = transitive = 0
        for _ in range(cfg.shift_samples):
            a, b, c = (Angle(Fraction(int(rng.integers(0, 12)), int(rng.integers(1, 13)))) for _ in range(3))
            small, large = diagonal.orbit_expand(a, n, 2), diagonal.orbit_expand(a, n, 3)
            nested += small <= large
            forward = {a.times(n ** k) for k in range(4)}
            verified += all(any(t.times(n ** j) in forward for j in range(4)) for t in large)
            symmetric += diagonal.s_class_equal(a, b, n) == diagonal.s_class_equal(b, a, n)
            transitive += not (diagonal.s_class_equal(a, b, n) and diagonal.s_class_equal(b, c, n)) \
                or diagonal.s_class_equal(a, c, n)
        samples = cfg.shift_samples
        cert.check('orbit truncations are nested', nested, '==', samples)
        cert.check('orbit members re-verified', verified, '==', samples)
        cert.check('class equality is symmetric', symmetric, '==', samples)
        cert.check('class equality is transitive', transitive, '==', samples)
        return cert

    def _shift_properties(self, shifts: ShiftLab, cfg: SuiteConfig) -> Certificate:
        rng = np.random.default_rng(cfg.seed + 1)
        n = max(cfg.n, 2)
        cert = Certificate('shift_properties', {'n': n, 'samples': cfg.shift_samples, 'seed': cfg.seed})
        scaled = isolated = decided = 0
        for _ in range(cfg.shift_samples):
            w = shifts.random_weight_seq(rng)
            interleaved = shifts.shift_jn_weights(w, n)
            scaled += shifts.gap_scaling_holds(w, n)
            spectrum = shifts.k_spectrum(interleaved, 2 * n - 1)
            isolated += all(window in spectrum for window in shifts.isolating_windows(w, n)) \
                and tuple([Fraction(1)] * (2 * n - 1)) in spectrum
            decision = shifts.bilateral_stability_decide(w, n)
            decided += decision.stable == (len(w.support) <= 1) and (
                decision.stable or not decision.data['window_in_interleaved'])
        samples = cfg.shift_samples
        cert.check('gap scales by n', scaled, '==', samples)
        cert.check('isolating windows present', isolated, '==', samples)
        cert.check('bilateral decisions carry refutations', decided, '==', samples)
        return cert

    def _diag_decision(self, diagonal: DiagonalLab, text: str, n: int, depth: int) -> Certificate:
        spectrum: AngleSet = parse_angle_set(text)
        decision = diagonal.diag_stability_decide(spectrum, n, depth)
        cert = Certificate('diag_stability', {'angles': text, 'n': n, 'depth': depth})
        cert.quantities['decision'] = decision
        if not decision.stable and all(g.infinite for g in spectrum.generators):
            cert.check('witness lies outside the spectrum', diagonal.contains(spectrum, decision.witness), '==', False)
        return cert

    def _shift_decision(self, shifts: ShiftLab, text: str, n: int) -> Certificate:
        w = parse_weight_seq(text)
        decision: Decision = shifts.weight_stability_decide(w, n)
        cert = Certificate('shift_stability', {'weights': text, 'n': n})
        cert.quantities['decision'] = decision
        if w.kind == 'bilateral' and not decision.stable:
            cert.check('refuting window absent from J_n(W)', decision.data['window_in_interleaved'], '==', False)
            cert.check('gap scales by n', decision.data['interleaved_gap'], '==', n * decision.data['gap'])
        return cert

    # bell family

    def bell_tasks(self, cfg: SuiteConfig) -> List[Task]:
        verifier = BellRingVerifier()
        return [
            ('bell_phi_homomorphism', verifier.verify_phi_homomorphism),
            ('bell_conjugation_identity', verifier.verify_conjugation_identity),
            ('bell_determinant_unit', verifier.verify_determinant_unit),
        ]

    # execution

    def _run_family(self, family: str, tasks: List[Task]) -> List[Tuple[SuiteEntry, float]]:
        results = []
        for name, task in tasks:
            started = time.perf_counter()
            try:
                entry = SuiteEntry(family, name, certificate=task())
            except _Skip as exc:
                entry = SuiteEntry(family, name, skipped=str(exc))
            except EnumerationTooLarge as exc:
                logger.warning(f"Skipping {name}: {exc}")
                entry = SuiteEntry(family, name, skipped=str(exc))
            except LabError as exc:
                logger.error(f"{name} failed: {exc}")
                entry = SuiteEntry(family, name, error=exc.to_dict())
            except Exception as exc:
                logger.exception(f"{name} raised unexpectedly: {exc}")
                entry = SuiteEntry(family, name, error={
                    'error': 'internal-error',
                    'detail': f"{ERROR_MESSAGES['internal-error']}: {type(exc).__name__}: {exc}",
                    'context': {},
                })
            results.append((entry, time.perf_counter() - started))
        return results

    def run_suite(self, cfg: SuiteConfig) -> Report:
        logger.info(f"Running families {cfg.families} with {self.workers} workers, seed {cfg.seed}")
        tables: Dict[str, str] = {}
        builders = {
            'measure': lambda: self.measure_tasks(cfg, tables),
            'operator': lambda: self.operator_tasks(cfg),
            'shift': lambda: self.shift_tasks(cfg),
            'bell': lambda: self.bell_tasks(cfg),
        }
        families = [f for f in cfg.families if f in builders]
        plans = [(family, builders[family]()) for family in families]
        with ThreadPoolExecutor(max_workers=self.workers) as executor:
            futures = [executor.submit(self._run_family, family, tasks) for family, tasks in plans]
            outcomes = [future.result() for future in futures]

        report = Report(TOOL_VERSION, cfg)
        for outcome in outcomes:
            for entry, seconds in outcome:
                report.entries.append(entry)
                report.timings[f"{entry.family}/{entry.name}"] = seconds
        report.tables = dict(sorted(tables.items()))
        summary = report.to_dict()['summary']
        logger.info(f"Suite finished: {summary['passed']}/{summary['executed']} passed, {summary['skipped']} skipped")
        return report

    # emission

    def render_json(self, report: Report) -> str:
        return json.dumps(serialize(report.to_dict()), sort_keys=True, indent=2) + '\n'

    def emit_report(self, report: Report, formats: Optional[Iterable[str]] = None,
                    destination: Optional[str] = None) -> List[Path]:
        """report.json, timings.json and, for csv, one file per table"""
        formats = list(formats or report.config.emit)
        target = Path(destination or report.config.report)
        written: List[Path] = []
        try:
            target.mkdir(parents=True, exist_ok=True)
            if 'json' in formats:
                path = target / 'report.json'
                path.write_text(self.render_json(report))
                written.append(path)
                timings = target / 'timings.json'
                timings.write_text(json.dumps(report.timings, sort_keys=True, indent=2) + '\n')
                written.append(timings)
            if 'csv' in formats:
                for name, text in report.tables.items():
                    path = target / f"{name}.csv"
                    path.write_text(text)
                    written.append(path)
        except OSError as exc:
            logger.error(f"Writing the report to {target} failed: {exc}")
            raise EmitError(str(exc), {'path': target})
        logger.info(f"Wrote {len(written)} report files to {target}")
        return written


class _Skip(Exception):
    """Task not applicable to its inputs"""
