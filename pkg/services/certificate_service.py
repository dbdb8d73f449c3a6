"""
Certificates for the forbidden-word measures at finite resolution
"""
import logging
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Tuple

from services.coding_service import RunState
from services.measure_service import MeasureService
from services.piecewise_cdf import w1_distance
from services.weight_service import WeightTable
from utils.data_classes import Certificate, ForbiddenSet, MeasureSpec, Word
from utils.exceptions import InvalidParameter, UnsupportedConfiguration

logger = logging.getLogger(__name__)

Distribution = Dict[RunState, Fraction]

TWO_STAGE_NOTE = (
    "nu_K spreads each cylinder mass with the affine image of the depth-M "
    "nu-tilde approximant; the W1 bound only uses that each spread is a "
    "probability measure on its cylinder"
)


class CertificateService:
    """
    Service assembling the measure certificates: weights, W1 Cauchy bound,
    translation, continuity, singularity, circle stability, non-atomicity
    and support
    """

    def __init__(self, measures: Optional[MeasureService] = None):
        self.measures = measures or MeasureService()
        self.coding = self.measures.coding

    def _params(self, forbidden: ForbiddenSet, **extra) -> Dict:
        params = {'N': forbidden.base, 'B': forbidden.label, 'cap': self.measures.cap}
        params.update(extra)
        return params

    def _words(self, depth: int, base: int) -> Iterator[Word]:
        return self.coding.enumerate_words(depth, base)

    def _finish(self, certificate: Certificate) -> Certificate:
        if certificate.passed:
            logger.info(f"Certificate {certificate.name} passed")
        else:
            labels = ', '.join(c.label for c in certificate.failures)
            logger.warning(f"Certificate {certificate.name} failed: {labels}")
        return certificate

    # weights

    def weights_certificate(self, forbidden: ForbiddenSet, depth: int) -> Certificate:
        """Normalization, consistency, decay, positivity and refinement to `depth`"""
        logger.info(f"Weights certificate for {forbidden.label} to depth {depth}")
        table = self.measures.table(forbidden)
        base = forbidden.base
        cert = Certificate('weights', self._params(forbidden, depth=depth))
        cert.quantities['C_N'] = table.c_n
        inconsistent = undecayed = 0
        min_p = Fraction(1)
        for length in range(depth + 1):
            total = Fraction(0)
            total_tilde = Fraction(0)
            for word in self._words(length, base):
                p, p_tilde = table.p(word), table.p_tilde(word)
                total += p
                total_tilde += p_tilde
                min_p = min(min_p, p)
                if not table.check_decay(word):
                    undecayed += 1
                if length < depth:
                    for tilde in (False, True):
                        lhs, rhs, same = table.check_consistency(word, tilde)
                        if not same or any(table.weight(word.append(j), tilde) > rhs for j in range(base)):
                            inconsistent += 1
            cert.check(f"sum of p over words of length {length}", total, '==', Fraction(1))
            cert.check(f"sum of p-tilde over words of length {length}", total_tilde, '==', Fraction(1))
        cert.check("successor masses split the parent mass", inconsistent, '==', 0)
        cert.check("words violating the decay bound", undecayed, '==', 0)
        cert.check("smallest p", min_p, '>', Fraction(0))
        return self._finish(cert)

    # W1 convergence

    def w1_cauchy_certificate(self, forbidden: ForbiddenSet, k_max: int, base_depth: int) -> Certificate:
        """W1(nu_K, nu_K+1) <= N^-K for K < k_max, and the same for nu-tilde"""
        logger.info(f"W1 Cauchy certificate for {forbidden.label}, K < {k_max}, M = {base_depth}")
        base = forbidden.base
        cert = Certificate('w1_cauchy', self._params(forbidden, k_max=k_max, base_depth=base_depth))
        cert.notes.append(TWO_STAGE_NOTE)
        for kind in ('nu', 'nu_tilde'):
            cdfs = [self.measures.build_cdf(MeasureSpec(forbidden, kind, k, base_depth))
                    for k in range(k_max + 1)]
            distances = []
            for k in range(k_max):
                distance = w1_distance(cdfs[k], cdfs[k + 1])
                distances.append(distance)
                cert.check(f"W1({kind}_{k}, {kind}_{k + 1}) <= N^-{k}", distance, '<=', Fraction(1, base ** k))
            cert.quantities[f"{kind}_distances"] = distances
        return self._finish(cert)

    # translation

    def translation_certificate(self, forbidden: ForbiddenSet, depth: int, base_depth: int = 0) -> Certificate:
        """
        mu(pi([i w])) does not depend on i for |w| <= depth-1, read off the
        built mu CDF; p(i w) = p(0 w) for i >= 2
        """
        if depth < 2:
            raise InvalidParameter(f"translation certificate needs depth >= 2, got {depth}")
        logger.info(f"Translation certificate for {forbidden.label} at depth {depth}")
        base = forbidden.base
        table = self.measures.table(forbidden)
        cert = Certificate('translation', self._params(forbidden, depth=depth, base_depth=base_depth))
        mu = self.measures.build_cdf(MeasureSpec(forbidden, 'mu', depth - 1, base_depth))
        cdf_mismatches = digit_mismatches = nu_mismatches = 0
        ratios: List[Fraction] = []
        for length in range(depth):
            for w in self._words(length, base):
                expected = table.p(w)
                for i in range(base):
                    iw = Word((i,) + w.digits, base)
                    mass = self.measures.cylinder_mass(mu, iw)
                    if mass != self.measures.mu_mass(iw, forbidden):
                        cdf_mismatches += 1
                    if mass != expected:
                        digit_mismatches += 1
                p0 = table.p(Word((0,) + w.digits, base))
                for i in range(2, base):
                    if table.p(Word((i,) + w.digits, base)) != p0:
                        nu_mismatches += 1
                ratios.append(table.p(Word((1,) + w.digits, base)) / p0)
        cert.check("mu CDF cylinder masses equal mu_mass", cdf_mismatches, '==', 0)
        cert.check("mu masses depending on the first digit", digit_mismatches, '==', 0)
        cert.check("p(i w) != p(0 w) for i >= 2", nu_mismatches, '==', 0)
        cert.check("smallest p(1 w)/p(0 w)", min(ratios), '>', Fraction(0))
        cert.quantities['ratio_1_over_0_min'] = min(ratios)
        cert.quantities['ratio_1_over_0_max'] = max(ratios)
        cert.quantities['mu_total'] = mu.total
        return self._finish(cert)

    # continuity

    def aligned(self, table: WeightTable, j: Word, extension: Word) -> bool:
        """No member of B is completed inside `extension` when read after j"""
        state = table.state(j)
        for digit in extension:
            if digit == 2 and table.coding.is_pending(state, table.forbidden):
                return False
            state = table.coding.advance(state, digit)
        return True

    def ratio_correction(self, table: WeightTable, j: Word, extension: Word) -> Fraction:
        """r = product over K <= k < K+M with a pending completion at (j i)|k of (1-2^-k)/(1-2^-(k+1))"""
        r = Fraction(1)
        word = j
        for k, digit in enumerate(extension, start=len(j)):
            if table.is_pending(word):
                r *= (1 - Fraction(1, 2 ** k)) / (1 - Fraction(1, 2 ** (k + 1)))
            word = word.append(digit)
        return r

    def continuity_certificate(self, forbidden: ForbiddenSet, depth: int) -> Certificate:
        """
        Ratios mu0/nu on cylinders pi([0 w]) inside [0, 1/N] for |w| <= depth-1,
        and the R_j band [R_j/2, R_j] on aligned extensions of each j = (0 w)
        """
        if depth < 2:
            raise InvalidParameter(f"continuity certificate needs depth >= 2, got {depth}")
        logger.info(f"Continuity certificate for {forbidden.label} at depth {depth}")
        base = forbidden.base
        table = self.measures.table(forbidden)
        cert = Certificate('continuity', self._params(forbidden, depth=depth))
        ratios: List[Fraction] = []
        min_nu = min_mu0 = Fraction(1)
        families = off_identity = 0
        band_low: Optional[Fraction] = None
        band_high: Optional[Fraction] = None
        for length in range(depth):
            for w in self._words(length, base):
                j = Word((0,) + w.digits, base)
                nu_mass, mu0_mass = table.p(j), table.p(w)
                min_nu, min_mu0 = min(min_nu, nu_mass), min(min_mu0, mu0_mass)
                r_j = mu0_mass / nu_mass
                ratios.append(r_j)
                for extension_length in range(1, depth - len(j) + 1):
                    for extension in self._words(extension_length, base):
                        if not self.aligned(table, j, extension):
                            continue
                        ji = j.concat(extension)
                        ratio = table.p(ji.shift()) / table.p(ji)
                        families += 1
                        if ratio != r_j * self.ratio_correction(table, j, extension):
                            off_identity += 1
                        scaled = ratio / r_j
                        band_low = scaled if band_low is None else min(band_low, scaled)
                        band_high = scaled if band_high is None else max(band_high, scaled)
        cert.check("smallest nu mass on [0, 1/N]", min_nu, '>', Fraction(0))
        cert.check("smallest mu0 mass on [0, 1/N]", min_mu0, '>', Fraction(0))
        cert.check("smallest mu0/nu ratio", min(ratios), '>', Fraction(0))
        cert.check("aligned ratios off R_j r_ji", off_identity, '==', 0)
        if band_low is not None:
            cert.check("smallest ratio / R_j on aligned families", band_low, '>=', Fraction(1, 2))
            cert.check("largest ratio / R_j on aligned families", band_high, '<=', Fraction(1))
        cert.quantities.update({
            'ratio_min': min(ratios),
            'ratio_max': max(ratios),
            'aligned_families': families,
        })
        if base == 3 and 1 in forbidden and depth >= 4:
            cert.quantities['ratio_102'] = table.p(Word((1, 0, 2), base)) / table.p(Word((0, 1, 0, 2), base))
        return self._finish(cert)

    # singularity

    def _free(self, table: WeightTable, dist: Distribution, position: int) -> Distribution:
        """Append one unconstrained digit at 1-based `position`"""
        result: Distribution = {}
        for state, mass in dist.items():
            for digit in range(table.base):
                weight = mass * table.step_factor(state, position, digit)
                after = table.coding.advance(state, digit)
                result[after] = result.get(after, Fraction(0)) + weight
        return result

    def _forced(self, table: WeightTable, dist: Distribution, position: int, digit: int) -> Distribution:
        result: Distribution = {}
        for state, mass in dist.items():
            after = table.coding.advance(state, digit)
            result[after] = result.get(after, Fraction(0)) + mass * table.step_factor(state, position, digit)
        return result

    def prefix_distribution(self, table: WeightTable, length: int) -> Distribution:
        dist: Distribution = {None: Fraction(1)}
        for position in range(1, length + 1):
            dist = self._free(table, dist, position)
        return dist

    def e_set_mass(self, table: WeightTable, b: Word, k: int) -> Fraction:
        """Sum over i of length k of p(i b)"""
        dist = self.prefix_distribution(table, k)
        for offset, digit in enumerate(b, start=1):
            dist = self._forced(table, dist, k + offset, digit)
        return sum(dist.values(), Fraction(0))

    def avoidance_mass(self, table: WeightTable, b: Word, n: int, k: int) -> Fraction:
        """Mass of the words i j1 .. jk, |i| = n, with every aligned block jm != b"""
        dist = self.prefix_distribution(table, n)
        position = n
        for _ in range(k):
            # (run state, number of block digits matching b so far, None once the block differs)
            block: Dict[Tuple[RunState, Optional[int]], Fraction] = {
                (state, 0): mass for state, mass in dist.items()
            }
            for t in range(len(b)):
                position += 1
                step: Dict[Tuple[RunState, Optional[int]], Fraction] = {}
                for (state, matched), mass in block.items():
                    for digit in range(table.base):
                        still = matched + 1 if matched is not None and digit == b.digits[t] else None
                        key = (table.coding.advance(state, digit), still)
                        step[key] = step.get(key, Fraction(0)) + mass * table.step_factor(state, position, digit)
                block = step
            dist = {}
            for (state, matched), mass in block.items():
                if matched == len(b):
                    continue
                dist[state] = dist.get(state, Fraction(0)) + mass
        return sum(dist.values(), Fraction(0))

    def singularity_certificate(self, alpha: ForbiddenSet, beta: ForbiddenSet, b_index: int,
                                k: int, n: int, e_depth: Optional[int] = None) -> Certificate:
        """
        E-set bound under nu_alpha and the aligned-block avoidance bound under
        nu_beta for b = b^b_index in B_alpha minus B_beta
        """
        if alpha.base != beta.base:
            raise InvalidParameter("both forbidden sets must share the base")
        if b_index not in alpha or b_index in beta:
            raise InvalidParameter(f"b^{b_index} must lie in {alpha.label} but not in {beta.label}")
        base = alpha.base
        e_depth = k if e_depth is None else e_depth
        logger.info(f"Singularity certificate {alpha.label} vs {beta.label}, b^{b_index}, k={k}, n={n}")
        b = self.coding.b_word(b_index, base)
        table_alpha = self.measures.table(alpha)
        table_beta = self.measures.table(beta)
        cert = Certificate('singularity', {
            'N': base, 'B_alpha': alpha.label, 'B_beta': beta.label, 'b': str(b),
            'k': k, 'n': n, 'e_depth': e_depth,
        })

        e_masses = []
        for length in range(e_depth + 1):
            mass = self.e_set_mass(table_alpha, b, length)
            e_masses.append(mass)
            cert.check(f"E mass, prefix length {length}", mass, '<=', Fraction(1, 2 ** (length + len(b))))
        cert.quantities['e_masses'] = e_masses

        # observed tail: sum of exact E masses past length; bound: sum over m > length of 2^-(m+|b|)
        tails = []
        for length in range(e_depth + 1):
            observed = sum(e_masses[length + 1:], Fraction(0))
            bound = Fraction(1, 2 ** (length + len(b)))
            cert.check(f"Borel-Cantelli tail after {length}", observed, '<=', bound)
            tails.append({'length': length, 'observed': observed, 'bound': bound})
        cert.check("sum of E masses within the summable bound", sum(e_masses, Fraction(0)), '<=',
                   Fraction(2, 2 ** len(b)))
        cert.quantities['tails'] = tails

        avoidance = []
        for prefix in range(n + 1):
            for blocks in range(1, k + 1):
                mass = self.avoidance_mass(table_beta, b, prefix, blocks)
                corrected = (1 - Fraction(1, (2 * base) ** len(b))) ** blocks
                printed = (1 - Fraction(1, 2 * base)) ** blocks
                cert.check(f"avoidance n={prefix} k={blocks} under corrected bound", mass, '<=', corrected)
                cert.check(f"avoidance n={prefix} k={blocks} under printed bound", mass, '<=', printed,
                           required=False)
                avoidance.append({'n': prefix, 'k': blocks, 'mass': mass,
                                  'corrected_bound': corrected, 'printed_bound': printed})
        cert.quantities['avoidance'] = avoidance
        cert.notes.append("printed bound (1 - 1/(2N))^k is reported, not asserted")
        return self._finish(cert)

    def printed_bound_discrepancy(self, base: int, b_index: int = 1) -> Certificate:
        """With B_beta empty, n = 0, k = 1 the avoidance mass exceeds (1 - 1/(2N))"""
        empty = ForbiddenSet((), base)
        b = self.coding.b_word(b_index, base)
        mass = self.avoidance_mass(self.measures.table(empty), b, 0, 1)
        cert = Certificate('printed_bound_discrepancy', {'N': base, 'b': str(b), 'n': 0, 'k': 1})
        cert.check("avoidance mass equals 1 - N^-|b|", mass, '==', 1 - Fraction(1, base ** len(b)))
        cert.check("avoidance mass within corrected bound", mass, '<=', 1 - Fraction(1, (2 * base) ** len(b)))
        cert.check("avoidance mass exceeds printed bound", mass, '>', 1 - Fraction(1, 2 * base))
        return self._finish(cert)

    # circle stability

    def circle_stability_certificate(self, forbidden: ForbiddenSet, n: int, depth: int) -> Certificate:
        """
        Cylinder-resolution form of the circle conditions with arcs pulled back
        to [0, 1] by t -> e^(2 pi i t): translated cylinders carry positive mass,
        and nu(pi([0 w])) and phi(pi([w])) = nu(pi([w])) are both positive
        """
        if n != forbidden.base:
            raise UnsupportedConfiguration(f"arc subdivision n={n} must equal the base N={forbidden.base}")
        if depth < 2:
            raise InvalidParameter(f"circle certificate needs depth >= 2, got {depth}")
        logger.info(f"Circle stability certificate for {forbidden.label} at depth {depth}")
        base = forbidden.base
        table = self.measures.table(forbidden)
        cert = Certificate('circle_stability', self._params(forbidden, n=n, depth=depth))
        translated_min = Fraction(1)
        ratios = []
        min_nu = min_phi = Fraction(1)
        for length in range(depth):
            for w in self._words(length, base):
                for i in range(base):
                    translated_min = min(translated_min, self.measures.mu_mass(Word((i,) + w.digits, base), forbidden))
                nu_mass = table.p(Word((0,) + w.digits, base))
                phi_mass = table.p(w)
                min_nu, min_phi = min(min_nu, nu_mass), min(min_phi, phi_mass)
                ratios.append(phi_mass / nu_mass)
        cert.check("smallest translated cylinder mass", translated_min, '>', Fraction(0))
        cert.check("smallest nu mass inside [0, 1/N]", min_nu, '>', Fraction(0))
        cert.check("smallest phi mass", min_phi, '>', Fraction(0))
        cert.quantities.update({'ratio_min': min(ratios), 'ratio_max': max(ratios)})
        return self._finish(cert)

    # supplementary

    def non_atomicity_certificate(self, forbidden: ForbiddenSet, depth: int) -> Certificate:
        """Largest depth-d cylinder mass under C_N (N-1)^-d, for d <= depth"""
        table = self.measures.table(forbidden)
        base = forbidden.base
        cert = Certificate('non_atomicity', self._params(forbidden, depth=depth))
        previous = None
        maxima = []
        for length in range(depth + 1):
            bound, tilde_bound = table.decay_bounds(length)
            largest = max(table.p(w) for w in self._words(length, base))
            largest_tilde = max(table.p_tilde(w) for w in self._words(length, base))
            maxima.append(largest)
            cert.check(f"largest p at depth {length}", largest, '<=', bound)
            cert.check(f"largest p-tilde at depth {length}", largest_tilde, '<=', tilde_bound)
            if previous is not None:
                cert.check(f"bound shrinks at depth {length}", bound, '<', previous)
            previous = bound
        cert.quantities['maxima'] = maxima
        return self._finish(cert)

    def support_certificate(self, forbidden: ForbiddenSet, depth: int) -> Certificate:
        """p > 0 everywhere; p-tilde and the nu-tilde CDF vanish exactly on words containing b"""
        table = self.measures.table(forbidden)
        base = forbidden.base
        members = forbidden.words()
        cert = Certificate('support', self._params(forbidden, depth=depth))
        nu_tilde = self.measures.build_cdf(MeasureSpec(forbidden, 'nu_tilde', depth))
        non_positive = misplaced_zeros = leaking = 0
        for length in range(depth + 1):
            for word in self._words(length, base):
                if table.p(word) <= 0:
                    non_positive += 1
                forbidden_inside = any(word.contains(b) for b in members)
                if (table.p_tilde(word) == 0) != forbidden_inside:
                    misplaced_zeros += 1
                if forbidden_inside and self.measures.cylinder_mass(nu_tilde, word) != 0:
                    leaking += 1
        cert.check("words with p <= 0", non_positive, '==', 0)
        cert.check("words where p-tilde = 0 disagrees with containing b", misplaced_zeros, '==', 0)
        cert.check("nu-tilde mass on forbidden cylinders", leaking, '==', 0)
        return self._finish(cert)
