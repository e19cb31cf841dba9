"""
Command-line interface

    twobit-ldpc [-v] [--threads N] [--progress] <command> ...

Commands: gen-code, decode, simulate, enumerate, verify, info.
Exit codes: 0 success, 2 invalid input or exhausted search, 3 budget
exhausted with partial results.
"""

from pathlib import Path
from typing import List, Optional, Sequence
import argparse
import logging
import sys

from .analysis.certify import certify_convergence
from .analysis.failures import atlas_from_result, enumerate_atlas, enumerate_failures
from .config import (
    DEFAULT_GIRTH,
    DEFAULT_MAX_ITER,
    DEFAULT_QC_COLS,
    DEFAULT_QC_P,
    DecoderSpec,
    EnumerationConfig,
    RunConfig,
    StopCriteria,
    write_metadata,
)
from .core.construction import build_qc_code, find_girth8_shifts
from .core.graph import TannerGraph, girth
from .core.validators import validate_error_pattern
from .decoding.dispatch import Decoder
from .decoding.trace import format_trace
from .examples.configurations import get_configuration, get_configurations
from .exceptions import BudgetExceededError, SearchExhaustedError
from .integrations.alist import read_alist, write_alist
from .integrations.atlas import read_atlas, write_atlas
from .integrations.csv_report import emit_csv, emit_plot_data
from .parsing.base_matrix import emit_base_matrix
from .parsing.cascade_spec import resolve_rule
from .parsing.syntax import print_format_examples
from .simulation.harness import estimate_fer, verify_guaranteed_correction

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_PARTIAL = 3


def _int_list(text: str) -> List[int]:
    return [int(tok) for tok in text.replace(",", " ").split()]


def _float_list(text: str) -> List[float]:
    return [float(tok) for tok in text.replace(",", " ").split()]


def _girth_text(g: TannerGraph) -> str:
    value = girth(g)
    return "inf" if value == float("inf") else str(int(value))


def decoder_spec_from_token(token: str, max_iter: int = DEFAULT_MAX_ITER,
                            detect_cycles: bool = False, threshold: int = 2) -> DecoderSpec:
    """
    Decoder spec from a command-line token.

    ``parallel-bf`` and ``gallager-b`` select those decoders; ``cascade=FILE``
    or ``cascade=f1:30,f2:30`` a cascade; anything else is a rule name or
    rule file run by the two-bit engine.
    """
    if token in ('parallel-bf', 'gallager-b'):
        return DecoderSpec(kind=token, rule=None, max_iter=max_iter, detect_cycles=detect_cycles,
                           threshold=threshold)
    if token.startswith('cascade='):
        value = token[len('cascade='):]
        if ':' in value:
            members = []
            for part in value.split(','):
                name, _, limit = part.partition(':')
                members.append((name, int(limit)))
            return DecoderSpec(kind='cascade', cascade=members, detect_cycles=detect_cycles)
        return DecoderSpec(kind='cascade', cascade_file=value, detect_cycles=detect_cycles)
    return DecoderSpec(kind='two-bit', rule=token, max_iter=max_iter, detect_cycles=detect_cycles)


def _add_code_source(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("code source")
    group.add_argument('--alist', help="alist file of the code")
    group.add_argument('--fixture', choices=sorted(get_configurations()),
                       help="shipped configuration graph")
    group.add_argument('--qc-rows', type=int, default=3)
    group.add_argument('--qc-cols', type=int, help="build a QC code with this many block columns")
    group.add_argument('--qc-p', type=int, help="circulant size of the QC code")
    group.add_argument('--qc-seed', type=int, default=0)


def _add_decoder_flags(parser: argparse.ArgumentParser, multiple: bool) -> None:
    group = parser.add_argument_group("decoder")
    group.add_argument('--rule', '--decoder', dest='decoders', action='append', default=[],
                       help="rule name/file, parallel-bf, gallager-b, or cascade=SPEC"
                            + (" (repeatable)" if multiple else ""))
    group.add_argument('--max-iter', type=int, default=DEFAULT_MAX_ITER)
    group.add_argument('--threshold', type=int, default=2, help="Gallager-B flip threshold")
    group.add_argument('--detect-cycles', action='store_true')


def _load_code(args: argparse.Namespace) -> TannerGraph:
    if args.alist:
        return read_alist(args.alist)
    if args.fixture:
        return get_configuration(args.fixture)[0]
    if args.qc_cols and args.qc_p:
        base = find_girth8_shifts(args.qc_rows, args.qc_cols, args.qc_p, seed=args.qc_seed)
        return build_qc_code(base, args.qc_p)
    raise ValueError("Give a code with --alist, --fixture or --qc-cols/--qc-p")


def _decoder_specs(args: argparse.Namespace) -> List[DecoderSpec]:
    tokens = args.decoders or ['f1']
    return [decoder_spec_from_token(token, args.max_iter, args.detect_cycles, args.threshold)
            for token in tokens]


def _run_config(args: argparse.Namespace, **fields) -> RunConfig:
    return RunConfig(command=args.command, alist=getattr(args, 'alist', None),
                     qc_rows=getattr(args, 'qc_rows', 3), qc_cols=getattr(args, 'qc_cols', None),
                     qc_p=getattr(args, 'qc_p', None), seed=getattr(args, 'seed', 0) or 0,
                     threads=args.threads, **fields)


def cmd_gen_code(args: argparse.Namespace) -> int:
    base = find_girth8_shifts(args.rows, args.cols, args.p, seed=args.seed,
                              max_attempts=args.max_attempts, target_girth=args.girth)
    g = build_qc_code(base, args.p)
    girth_text = _girth_text(g)
    print(f"n={g.n} m={g.m} rate={g.rate:.4f} design_rate={g.design_rate:.4f} girth={girth_text}")
    config = RunConfig(command=args.command, qc_rows=args.rows, qc_cols=args.cols, qc_p=args.p,
                       seed=args.seed, threads=args.threads, outputs=[
                           out for out in (args.alist_out, args.base_out) if out])
    if args.alist_out:
        write_alist(g, args.alist_out)
        write_metadata(args.alist_out, config, n=g.n, m=g.m, girth=girth_text, base=base)
    if args.base_out:
        Path(args.base_out).write_text(emit_base_matrix(base, args.p), encoding='utf-8')
        write_metadata(args.base_out, config, p=args.p, seed=args.seed, girth=girth_text, n=g.n, m=g.m)
    if not args.alist_out and not args.base_out:
        print(emit_base_matrix(base, args.p), end="")
    return EXIT_OK


def cmd_decode(args: argparse.Namespace) -> int:
    g = _load_code(args)
    if args.errors is not None:
        errors = _int_list(args.errors)
    elif args.fixture:
        errors = list(get_configuration(args.fixture)[1])
    else:
        errors = []
    report = validate_error_pattern(errors, g.n)
    if not report['valid']:
        raise ValueError("; ".join(report['errors']))

    spec = _decoder_specs(args)[-1]
    decoder = Decoder(spec, g.gamma)
    word = [0] * g.n
    for v in errors:
        word[v] = 1
    result = decoder(g, word, record_trace=args.trace)
    verdict = "converged" if result.converged else "non-converged"
    line = f"{verdict} {result.iterations_used}"
    if result.algorithm_index is not None and decoder.member_count > 1:
        line += f" member {result.algorithm_index}"
    print(line)
    if args.trace:
        print(format_trace(result), end="")
    return EXIT_OK


def cmd_simulate(args: argparse.Namespace) -> int:
    g = _load_code(args)
    alphas = _float_list(args.alphas)
    stop = StopCriteria(max_frames=args.max_frames, target_frame_errors=args.target_errors)
    specs = _decoder_specs(args)
    config = _run_config(args, decoders=specs, alphas=alphas, stop=stop,
                         outputs=[out for out in (args.out, args.plot_data) if out])
    results = []
    for spec in specs:
        decoder = Decoder(spec, g.gamma)
        for alpha in alphas:
            results.append(estimate_fer(g, decoder, alpha, stop, args.seed, threads=args.threads,
                                        progress=args.progress))
    text = emit_csv(results)
    if args.out:
        Path(args.out).write_text(text, encoding='utf-8')
        write_metadata(args.out, config, rows=len(results))
    else:
        print(text, end="")
    if args.plot_data:
        Path(args.plot_data).write_text(emit_plot_data(results), encoding='utf-8')
        write_metadata(args.plot_data, config, rows=len(results))
    return EXIT_OK


def cmd_enumerate(args: argparse.Namespace) -> int:
    settings = EnumerationConfig(rule=args.rule, k=args.k, l=args.l, n_max=args.nmax,
                                 girth_min=args.girth, max_check_degree=args.max_check_degree,
                                 max_nodes=args.max_nodes)
    rule = resolve_rule(settings.rule)
    if args.deepen:
        atlas = enumerate_atlas(rule, settings.k, settings.l, settings.n_max, settings.girth_min,
                                settings.max_check_degree, settings.max_nodes)
    else:
        result = enumerate_failures(rule, settings.k, settings.l, settings.n_max, settings.girth_min,
                                    settings.max_check_degree, settings.max_nodes)
        atlas = atlas_from_result(result, rule, settings.k, settings.l, settings.n_max,
                                  settings.girth_min, settings.max_check_degree)

    state = "complete" if atlas.complete else f"partial, sizes up to {atlas.covered_n}"
    print(f"atlas: {len(atlas)} minimal failure graphs ({state})")
    for size, count in atlas.size_histogram().items():
        print(f"  {size} variables: {count}")
    if args.out:
        write_atlas(atlas, args.out)
        write_metadata(args.out, _run_config(args, enumeration=settings, outputs=[args.out]),
                       members=len(atlas), complete=atlas.complete, covered_n=atlas.covered_n)
    return EXIT_OK if atlas.complete else EXIT_PARTIAL


def cmd_verify(args: argparse.Namespace) -> int:
    g = _load_code(args)
    if args.atlas:
        if args.errors is None:
            raise ValueError("--atlas needs --errors")
        errors = _int_list(args.errors)
        rule = resolve_rule(args.decoders[-1]) if args.decoders else None
        atlas = read_atlas(args.atlas, rule)
        certificate = certify_convergence(g, errors, atlas, timeout=args.timeout,
                                          trust_partial=args.trust_partial)
        line = certificate.status
        if certificate.reason:
            line += f": {certificate.reason}"
        print(line)
        for caveat in certificate.caveats:
            print(f"  caveat: {caveat}")
        if certificate.embedding:
            pairs = " ".join(f"{a}->{b}" for a, b in sorted(certificate.embedding.items()))
            print(f"  embedding: {pairs}")
        return EXIT_OK

    if args.t is None:
        raise ValueError("verify needs --t or --atlas")
    decoder = Decoder(_decoder_specs(args)[-1], g.gamma)
    report = verify_guaranteed_correction(g, decoder, args.t, budget=args.budget,
                                          samples=args.samples, seed=args.seed,
                                          threads=args.threads, progress=args.progress)
    if report.status == 'counterexample':
        print(f"counterexample: {' '.join(str(v) for v in report.counterexample or [])}")
        if args.trace and report.counterexample_trace:
            print(report.counterexample_trace, end="")
    elif report.status == 'sampled':
        print("sampled: not certified")
    else:
        print(report.status)
    for weight, covered in report.coverage.items():
        print(f"  weight {weight}: {covered}")
    if args.out:
        Path(args.out).write_text(report.model_dump_json(indent=2) + "\n", encoding='utf-8')
        write_metadata(args.out, _run_config(args, decoders=[decoder.spec], outputs=[args.out]))
    return EXIT_PARTIAL if report.status in ('incomplete', 'sampled') else EXIT_OK


def cmd_info(args: argparse.Namespace) -> int:
    if args.formats:
        print_format_examples()
        return EXIT_OK
    g = _load_code(args)
    print(f"n={g.n} m={g.m} gamma={g.gamma}")
    print(f"design_rate={g.design_rate:.4f} rate={g.rate:.4f}")
    print(f"girth={_girth_text(g)}")
    profile = " ".join(f"{degree}:{count}" for degree, count in g.degree_profile().items())
    print(f"check_degrees={profile}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='twobit-ldpc',
                                     description="Two-bit bit flipping decoders for LDPC codes")
    parser.add_argument('-v', '--verbose', action='count', default=0, help="-v info, -vv debug")
    parser.add_argument('--threads', type=int, default=1)
    parser.add_argument('--progress', action='store_true', help="show progress bars")
    sub = parser.add_subparsers(dest='command', required=True)

    gen = sub.add_parser('gen-code', help="search a girth-8 QC code")
    gen.add_argument('--rows', type=int, default=3)
    gen.add_argument('--cols', type=int, default=DEFAULT_QC_COLS)
    gen.add_argument('--p', type=int, default=DEFAULT_QC_P)
    gen.add_argument('--seed', type=int, default=0)
    gen.add_argument('--girth', type=int, default=DEFAULT_GIRTH, choices=(6, 8))
    gen.add_argument('--max-attempts', type=int, default=200)
    gen.add_argument('--alist-out')
    gen.add_argument('--base-out')
    gen.set_defaults(handler=cmd_gen_code)

    dec = sub.add_parser('decode', help="decode one error pattern")
    _add_code_source(dec)
    _add_decoder_flags(dec, multiple=False)
    dec.add_argument('--errors', help="comma-separated error indices (default: fixture errors)")
    dec.add_argument('--trace', action='store_true', help="dump the per-iteration trace")
    dec.set_defaults(handler=cmd_decode)

    sim = sub.add_parser('simulate', help="frame error rates over the BSC")
    _add_code_source(sim)
    _add_decoder_flags(sim, multiple=True)
    sim.add_argument('--alphas', required=True, help="comma-separated crossover probabilities")
    sim.add_argument('--max-frames', type=int, default=10_000)
    sim.add_argument('--target-errors', type=int, default=100)
    sim.add_argument('--seed', type=int, default=0)
    sim.add_argument('--out', help="CSV output path (default stdout)")
    sim.add_argument('--plot-data', help="whitespace plot table output path")
    sim.set_defaults(handler=cmd_simulate)

    enum = sub.add_parser('enumerate', help="enumerate minimal failure graphs")
    enum.add_argument('--rule', default='f1')
    enum.add_argument('--k', type=int, required=True)
    enum.add_argument('--l', type=int, default=15)
    enum.add_argument('--nmax', type=int, required=True)
    enum.add_argument('--girth', type=int, default=DEFAULT_GIRTH)
    enum.add_argument('--max-check-degree', type=int)
    enum.add_argument('--max-nodes', type=int)
    enum.add_argument('--deepen', action='store_true', help="iterative deepening over the size bound")
    enum.add_argument('--out', help="atlas output path")
    enum.set_defaults(handler=cmd_enumerate)

    ver = sub.add_parser('verify', help="guaranteed correction or atlas certification")
    _add_code_source(ver)
    _add_decoder_flags(ver, multiple=False)
    ver.add_argument('--t', type=int)
    ver.add_argument('--budget', type=int)
    ver.add_argument('--samples', type=int)
    ver.add_argument('--seed', type=int, default=0)
    ver.add_argument('--trace', action='store_true')
    ver.add_argument('--atlas', help="atlas file for convergence certification (--rule overrides its rule)")
    ver.add_argument('--errors', help="error support to certify")
    ver.add_argument('--timeout', type=float)
    ver.add_argument('--trust-partial', action='store_true')
    ver.add_argument('--out', help="JSON report path")
    ver.set_defaults(handler=cmd_verify)

    info = sub.add_parser('info', help="code statistics")
    _add_code_source(info)
    info.add_argument('--formats', action='store_true', help="print examples of the text formats")
    info.set_defaults(handler=cmd_info)
    return parser


def _configure_logging(verbosity: int) -> None:
    level = logging.WARNING if verbosity <= 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(level=level, stream=sys.stderr,
                        format="%(asctime)s %(levelname)s %(name)s: %(message)s")


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _configure_logging(args.verbose)
    try:
        return args.handler(args)
    except SearchExhaustedError as e:
        print(f"search exhausted: {e}", file=sys.stderr)
        return EXIT_INVALID
    except BudgetExceededError as e:
        print(f"budget exceeded: {e}", file=sys.stderr)
        return EXIT_PARTIAL
    except (ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
