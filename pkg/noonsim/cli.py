"""Command-line front end.

    noonsim fidelity --n 4 --r 0.1 --gamma 0.47 --regime weak --theta 0
    noonsim sweep --n 4 --r 4.5 --regime strong --gamma 10,50,150
    noonsim optimize --n 4 --r 0.1 --regime weak
    noonsim signal --n 4 --r 0.1 --gamma 0 --pattern 3-1
    noonsim flux --r 4.5 --gamma 50 --regime strong

Exit status: 0 success, 2 bad arguments, 3 numerical/domain failure.
"""
import argparse
import cmath
import math
import os
import sys

import numpy as np

from . import fs, output
from .beamsplitter import DEFAULT_CONVENTION, BeamSplitterConvention, \
    noon_fidelity
from .errors import NoonsimError
from .fock import Regime, SourceParams, displaced_tmsv_component
from .interferometer import CoincidenceSignal, DetectionPattern, \
    coincidence_signal_sweep, fringe_harmonics, visibility
from .optimize import OptimizerSettings, SweepSpec, curve_peak, \
    fidelity_vs_theta, flux_report, optimize_gamma_theta
from .utils import uniform_phase_grid

import logging
log = logging.getLogger(__name__)


MAX_PHOTONS = 20
OUTPUT_ENV = 'NOONSIM_OUTPUT'
STDERR = object()

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERIC = 3


class UsageError(Exception):
    """Bad command-line arguments found after parsing.
    """


def _float_list(text):
    try:
        values = [float(part) for part in text.split(',') if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError('expected comma separated numbers, '
                                         'got %r' % text)
    if not values:
        raise argparse.ArgumentTypeError('expected at least one number')
    return values


def _add_output_arguments(parser, default_format):
    add = parser.add_argument
    add('--format', choices=('json', 'csv'), default=default_format)
    add('-o', '--output', help='write to this path instead of stdout '
        '(default: $%s when set)' % OUTPUT_ENV)
    add('-v', '--verbose', action='store_true', help='debug logging on stderr')


def _add_common_arguments(parser):
    add = parser.add_argument
    add('--regime', choices=[r.value for r in Regime], default='weak')
    add('--phi', type=float, default=0.0, help='phase of the PDC pairs')
    add('--convention', choices=[c.value for c in BeamSplitterConvention],
        default=DEFAULT_CONVENTION.value)


def _add_source_arguments(parser, r_required=True):
    add = parser.add_argument
    add('--n', type=int, required=r_required, help='photon number N')
    add('--r', type=float, required=r_required, help='squeeze gain')
    add('--theta', type=float, default=0.0, help='coherent phase')
    strength = parser.add_mutually_exclusive_group()
    strength.add_argument('--gamma', type=float,
                          help='pair amplitude ratio (see --regime)')
    strength.add_argument('--alpha-mag', type=float,
                          help='coherent amplitude |alpha|')
    add('--beta-mag', type=float, help='|beta0| when it differs from |alpha|')
    add('--beta-phase', type=float, help='arg(beta0) when it differs from '
        'theta')
    _add_common_arguments(parser)


def _check_finite(arg, *names):
    for name in names:
        value = getattr(arg, name, None)
        if value is None:
            continue
        values = value if isinstance(value, list) else [value]
        for item in values:
            if not math.isfinite(item):
                raise UsageError('--%s must be finite' % name.replace('_', '-'))
            if item < 0 and name not in ('phi', 'theta', 'beta_phase'):
                raise UsageError('--%s must be >= 0' % name.replace('_', '-'))


def _check_photons(n_total):
    if not 1 <= n_total <= MAX_PHOTONS:
        raise UsageError('--n must be between 1 and %d' % MAX_PHOTONS)


def _source(arg):
    """Returns (SourceParams, record of the parameters).
    """
    if arg.gamma is None and arg.alpha_mag is None:
        raise UsageError('one of --gamma or --alpha-mag is required')
    regime = Regime(arg.regime)
    if arg.gamma is not None:
        gamma = arg.gamma
        alpha_mag = regime.alpha_mag_of(gamma, arg.r)
    else:
        alpha_mag = arg.alpha_mag
        gamma = regime.gamma_of(alpha_mag, arg.r) \
            if regime.pair_scale(arg.r) > 0 or alpha_mag == 0 else None

    alpha0 = cmath.rect(alpha_mag, arg.theta)
    beta0 = alpha0
    if arg.beta_mag is not None or arg.beta_phase is not None:
        beta0 = cmath.rect(alpha_mag if arg.beta_mag is None else arg.beta_mag,
                           arg.theta if arg.beta_phase is None
                           else arg.beta_phase)
    src = SourceParams(r=arg.r, phi=arg.phi, alpha0=alpha0, beta0=beta0)
    params = {
        'n': arg.n, 'r': arg.r, 'phi': arg.phi, 'regime': regime,
        'gamma': gamma, 'alpha_mag': alpha_mag, 'theta': arg.theta,
        'beta_mag': abs(beta0), 'beta_phase': cmath.phase(beta0),
        'convention': arg.convention,
    }
    return src, params


def _record_row(record, keys):
    return [record[k] if record[k] is not None else '' for k in keys]


class Command:
    """The base command to define command-line actions.
    """
    name = None
    parser = None
    finite_arguments = ()

    def __init__(self, runner):
        self._runner = runner

    def execute(self, args):
        arg = self.parser.parse_args(args)
        if arg.verbose:
            logging.basicConfig(level=logging.DEBUG, stream=sys.stderr)
        _check_finite(arg, *self.finite_arguments)
        for text, path in self.documents(arg):
            self._runner.emit(text, path)
        return EXIT_OK

    def documents(self, arg):
        """Returns the (text, path) pairs to emit, in order. Everything is
        rendered before anything is written.
        """
        return [(self.render(arg), arg.output)]

    def render(self, arg):
        raise NotImplementedError()


class FidelityCommand(Command):
    name = 'fidelity'
    finite_arguments = ('r', 'theta', 'gamma', 'alpha_mag', 'beta_mag',
                        'beta_phase', 'phi')

    parser = argparse.ArgumentParser(prog='noonsim fidelity',
                                     description='NOON fidelity of one source')
    _add_source_arguments(parser)
    _add_output_arguments(parser, 'json')

    columns = ['n', 'r', 'phi', 'regime', 'gamma', 'alpha_mag', 'theta',
               'beta_mag', 'beta_phase', 'convention', 'fidelity',
               'fixed_phase_fidelity', 'noon_phase']

    def render(self, arg):
        _check_photons(arg.n)
        src, params = _source(arg)
        result = noon_fidelity(displaced_tmsv_component(src, arg.n),
                               BeamSplitterConvention(arg.convention))
        record = dict(params, fidelity=result.fidelity,
                      fixed_phase_fidelity=result.fixed_phase_fidelity,
                      noon_phase=result.noon_phase)
        if arg.format == 'csv':
            return output.csv_text(self.columns,
                                   [_record_row(record, self.columns)])
        return output.json_text(self.name, {'params': params,
                                            'fidelity': result.fidelity,
                                            'fixed_phase_fidelity':
                                                result.fixed_phase_fidelity,
                                            'noon_phase': result.noon_phase})


class SweepCommand(Command):
    name = 'sweep'
    finite_arguments = ('r', 'gamma', 'phi')

    parser = argparse.ArgumentParser(prog='noonsim sweep',
                                     description='Fidelity against the '
                                     'coherent phase for several gamma values')
    add = parser.add_argument
    add('--n', type=int, required=True, help='photon number N')
    add('--r', type=float, required=True, help='squeeze gain')
    add('--gamma', type=_float_list, required=True,
        help='comma separated pair amplitude ratios')
    add('--theta-points', type=int, default=256)
    _add_common_arguments(parser)
    _add_output_arguments(parser, 'csv')

    def render(self, arg):
        _check_photons(arg.n)
        if arg.theta_points < 1:
            raise UsageError('--theta-points must be >= 1')
        spec = SweepSpec.uniform(arg.r, arg.n, Regime(arg.regime), arg.gamma,
                                 arg.theta_points, arg.phi,
                                 BeamSplitterConvention(arg.convention))
        curves = [fidelity_vs_theta(spec, gamma) for gamma in arg.gamma]
        if arg.format == 'csv':
            header = ['theta'] + ['fidelity_gamma=%r' % g for g in arg.gamma]
            rows = [[theta] + [curve[i][1] for curve in curves]
                    for i, theta in enumerate(spec.theta_grid)]
            return output.csv_text(header, rows)

        records = []
        for gamma, curve in zip(arg.gamma, curves):
            theta_max, fidelity_max = curve_peak(spec, gamma, curve)
            records.append({'gamma': gamma,
                            'theta': [p[0] for p in curve],
                            'fidelity': [p[1] for p in curve],
                            'max_fidelity': fidelity_max,
                            'theta_at_max': theta_max})
        params = {'n': arg.n, 'r': arg.r, 'phi': arg.phi,
                  'regime': arg.regime, 'convention': arg.convention}
        return output.json_text(self.name, {'params': params,
                                            'curves': records})


class OptimizeCommand(Command):
    name = 'optimize'
    finite_arguments = ('r', 'gamma_min', 'gamma_max', 'phi')

    parser = argparse.ArgumentParser(prog='noonsim optimize',
                                     description='Maximize the fidelity over '
                                     'gamma and theta')
    add = parser.add_argument
    add('--n', type=int, required=True, help='photon number N')
    add('--r', type=float, required=True, help='squeeze gain')
    add('--gamma-min', type=float, default=0.1)
    add('--gamma-max', type=float, default=10.0)
    add('--config', help='INI file with an [optimize] section')
    add('--theta-points', type=int)
    add('--gamma-points', type=int)
    add('--refine-rounds', type=int)
    add('--refine-points', type=int)
    _add_common_arguments(parser)
    _add_output_arguments(parser, 'json')

    columns = ['gamma_star', 'theta_star', 'fidelity_star', 'alpha_mag_star',
               'coarse_fidelity', 'rounds', 'evaluations']

    def render(self, arg):
        _check_photons(arg.n)
        settings = OptimizerSettings.from_config(arg.config) if arg.config \
            else OptimizerSettings()
        settings = settings.updated(theta_points=arg.theta_points,
                                    gamma_points=arg.gamma_points,
                                    refine_rounds=arg.refine_rounds,
                                    refine_points=arg.refine_points)
        regime = Regime(arg.regime)
        optimum = optimize_gamma_theta(
            arg.r, arg.n, regime, (arg.gamma_min, arg.gamma_max), settings,
            arg.phi, BeamSplitterConvention(arg.convention))
        record = {
            'gamma_star': optimum.gamma_star,
            'theta_star': optimum.theta_star,
            'fidelity_star': optimum.fidelity_star,
            'alpha_mag_star': regime.alpha_mag_of(optimum.gamma_star, arg.r),
            'coarse_fidelity': optimum.coarse_fidelity,
            'rounds': optimum.rounds,
            'evaluations': optimum.evaluations,
        }
        if arg.format == 'csv':
            return output.csv_text(self.columns,
                                   [_record_row(record, self.columns)])
        record['curve'] = [list(point) for point in optimum.curve]
        record['params'] = {'n': arg.n, 'r': arg.r, 'phi': arg.phi,
                            'regime': regime, 'convention': arg.convention,
                            'gamma_bounds': [arg.gamma_min, arg.gamma_max],
                            'settings': vars(settings)}
        return output.json_text(self.name, record)


class SignalCommand(Command):
    name = 'signal'
    finite_arguments = ('r', 'theta', 'gamma', 'alpha_mag', 'beta_mag',
                        'beta_phase', 'phi')
    selftest_harmonics = 8

    parser = argparse.ArgumentParser(prog='noonsim signal',
                                     description='Coincidence signal of a '
                                     'detection pattern against psi')
    _add_source_arguments(parser, r_required=False)
    add = parser.add_argument
    add('--pattern', type=DetectionPattern.parse,
        help='photons at the upper and lower exit ports, e.g. 3-1')
    add('--psi-points', type=int, default=256)
    add('--selftest', action='store_true',
        help='analyse 1 + cos(4 psi) instead of a source')
    add('--summary', help='write the JSON harmonic summary to this path '
        '(csv format; default <output>.summary.json, or stderr)')
    _add_output_arguments(parser, 'csv')

    def _signal(self, arg, psi):
        if arg.selftest:
            return CoincidenceSignal(psi, 1.0 + np.cos(4 * psi),
                                     relative_units=False), {'selftest': True}
        if arg.n is None or arg.r is None or arg.pattern is None:
            raise UsageError('--n, --r and --pattern are required')
        _check_photons(arg.n)
        src, params = _source(arg)
        params['pattern'] = str(arg.pattern)
        signal = coincidence_signal_sweep(
            src, arg.n, arg.pattern, psi,
            BeamSplitterConvention(arg.convention))
        return signal, params

    def _analyse(self, arg):
        if arg.psi_points < 2:
            raise UsageError('--psi-points must be >= 2')
        psi = uniform_phase_grid(arg.psi_points)
        signal, params = self._signal(arg, psi)
        spectrum = fringe_harmonics(signal)

        top = signal.pattern.n_total if signal.pattern is not None \
            else self.selftest_harmonics
        top = min(top, max(spectrum.coefficients))
        summary = {
            'harmonics': [{'k': k, 'amplitude': spectrum.amplitude(k),
                           'phase': spectrum.phase(k)}
                          for k in range(top + 1)],
            'dominant_ac': spectrum.dominant_ac,
            'visibility': visibility(signal, spectrum.dominant_ac)
            if spectrum.dominant_ac else None,
            'relative_units': signal.relative_units,
            'params': params,
        }
        return signal, summary

    def render(self, arg):
        signal, summary = self._analyse(arg)
        return output.json_text(self.name, dict(
            summary, psi=signal.psi_samples,
            probability=signal.probabilities))

    def documents(self, arg):
        """The csv table goes to the output; the harmonic summary goes to
        --summary, else next to the output file as <output>.summary.json,
        else to stderr.
        """
        if arg.format == 'json':
            return super().documents(arg)
        signal, summary = self._analyse(arg)
        table = output.csv_text(['psi', 'probability'], signal.rows())
        summary = output.json_text(self.name, summary)
        path = self._runner.output_path(arg.output)
        if arg.summary:
            summary_path = arg.summary
        else:
            summary_path = path + '.summary.json' if path else STDERR
        return [(table, path), (summary, summary_path)]


class FluxCommand(Command):
    name = 'flux'
    finite_arguments = ('r', 'gamma')

    parser = argparse.ArgumentParser(prog='noonsim flux',
                                     description='Pair and photon flux of the '
                                     'source')
    add = parser.add_argument
    add('--r', type=float, required=True, help='squeeze gain')
    add('--gamma', type=float, required=True, help='pair amplitude ratio')
    add('--regime', choices=[r.value for r in Regime], default='weak')
    _add_output_arguments(parser, 'json')

    columns = ['r', 'gamma', 'regime', 'mean_pdc_pairs',
               'mean_photons_per_mode', 'coherent_pair_flux']

    def render(self, arg):
        report = flux_report(arg.r, arg.gamma, Regime(arg.regime))
        record = {'r': arg.r, 'gamma': report.gamma, 'regime': report.regime,
                  'mean_pdc_pairs': report.mean_pdc_pairs,
                  'mean_photons_per_mode': report.mean_photons_per_mode,
                  'coherent_pair_flux': report.coherent_pair_flux}
        if arg.format == 'csv':
            return output.csv_text(self.columns,
                                   [_record_row(record, self.columns)])
        return output.json_text(self.name, record)


class Runner:
    prog = 'noonsim'
    _command_registry = (
        FidelityCommand,
        SweepCommand,
        OptimizeCommand,
        SignalCommand,
        FluxCommand,
    )

    @property
    def command_dict(self):
        return {
            c.name: c
                for c in self._command_registry
        }

    def _usage(self):
        available_cmds = list(self.command_dict.keys())
        print("Usage: %s [command] [options]\n\n"
              "[commands]%s" % (self.prog, '\n  '.join([''] + available_cmds)))
        return EXIT_OK

    def _error(self, message, prog=None, code=EXIT_USAGE):
        print('%s: error: %s' % (prog or self.prog, message), file=sys.stderr)
        return code

    def output_path(self, path=None):
        return path or os.environ.get(OUTPUT_ENV) or None

    def emit(self, text, path=None):
        if path is STDERR:
            sys.stderr.write(text)
            return
        path = self.output_path(path)
        if path:
            fs.atomic_write(path, text)
            log.debug('wrote %d characters to %s', len(text), path)
        else:
            sys.stdout.write(text)

    def exit(self, code=0):
        sys.exit(code)

    def run(self, argv):
        if argv and argv[0].lower() in ('-h', '--help'):
            return self._usage()

        command_dict = self.command_dict
        available_cmds = command_dict.keys()
        if not argv or argv[0] not in available_cmds:
            expected = ', '.join(available_cmds)
            xarg = argv[0] if argv else '?'
            return self._error('unknown command: %s. Expected: %s'
                               % (xarg, expected))

        command = command_dict[argv[0]](self)
        prog = '%s %s' % (self.prog, command.name)
        try:
            return command.execute(argv[1:])
        except SystemExit as ex:
            return ex.code if isinstance(ex.code, int) else EXIT_USAGE
        except UsageError as ex:
            return self._error(str(ex), prog)
        except NoonsimError as ex:
            return self._error(str(ex), prog, EXIT_NUMERIC)
        except ArithmeticError as ex:
            return self._error('numerical failure: %s' % ex, prog,
                               EXIT_NUMERIC)
        except (OSError, ValueError) as ex:
            return self._error(str(ex), prog)


def main(argv=None):
    runner = Runner()
    runner.exit(runner.run(sys.argv[1:] if argv is None else argv))


if __name__ == '__main__':
    main()
