"""
Command line front end.

Every subcommand reads one JSON document (``--input``, inline or a path),
validates it against its schema, and writes one result document to stdout.

    >>> run(["one-param", "--input", '{"n":1,"phi":[[1]],"c":[4]}'])
    (0, '{"N":4,"case":"FULL_RANK","alpha":[1],"sign_ambiguous":true}')
    >>> run(["jezierski", "--input", '{"n":1,"phi":[[1]],"c":[-3]}', "--format", "text"])
    (0, 'D: 3')
    >>> import json
    >>> code, out = run(["classic", "--input", '{"n":2,"phi":[[1]],"c":[0,0]}'])
    >>> code, json.loads(out)["error"]["expected"]
    (2, '"phi" must be an n×n matrix')
"""
import argparse
import logging
import sys
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Optional, Tuple

from torus_nielsen._config import config
from torus_nielsen.apps import bundle_S1_min_circles, bundle_T2_min_circles
from torus_nielsen.descriptor import HomotopyDescriptor
from torus_nielsen.errors import (InvariantViolation, MalformedInput,
                                  RankPrecondition, TorusNielsenError)
from torus_nielsen.hochschild import (boundary_d1, boundary_d2, homology_coefficients,
                                      reduce_to_canonical, tensor_trace)
from torus_nielsen.io.json_io import dump_document, load_document
from torus_nielsen.nielsen import (INFINITE, OneParamCase, classical_nielsen,
                                   jezierski_D, lefschetz_class, one_param_nielsen,
                                   semicentralizer, semiconjugacy_classes,
                                   trace_components, trace_lefschetz)
from torus_nielsen.oracle import (FixedSetMethod, LinearHomotopy, choose_generic_epsilon,
                                  fixed_set_exact, fixed_set_grid, parse_epsilon)
from torus_nielsen.schema import documents as docs
from torus_nielsen.schema.wrapper import GenericWrapper

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_INPUT, EXIT_INVARIANT = 0, 2, 3


class _Parser(argparse.ArgumentParser):
    """Reports usage errors as :class:`MalformedInput` instead of exiting."""

    def error(self, message):
        raise MalformedInput(message, self.format_usage().strip())


@dataclass(frozen=True)
class Command:
    name: str
    help: str
    document: type  # a GenericWrapper subclass
    result: type  # a Schema subclass
    handler: Callable[[Any, Dict[str, Any], argparse.Namespace], Dict[str, Any]]


# ═════════════════════════════ handlers ══════════════════════════════
def _classic(desc: HomotopyDescriptor, data, args) -> dict:
    return {"classical_nielsen": classical_nielsen(desc.phi)}


def _one_param(desc: HomotopyDescriptor, data, args) -> dict:
    result = one_param_nielsen(desc)
    out = {"N": result.N, "case": result.case.value}
    if result.case is OneParamCase.FULL_RANK:
        out["alpha"] = list(result.alpha_direction)
        out["sign_ambiguous"] = result.sign_ambiguous
    return out


def _lefschetz(desc: HomotopyDescriptor, data, args) -> dict:
    N, alpha, ambiguous = lefschetz_class(desc)
    return {"N": N, "alpha": list(alpha) if alpha else None, "sign_ambiguous": ambiguous}


def _semiconj(desc: HomotopyDescriptor, data, args) -> dict:
    structure, representatives = semiconjugacy_classes(desc)
    if representatives != INFINITE:
        representatives = [list(g.exponents) for g in representatives]
    return {"invariant_factors": list(structure.invariant_factors),
            "free_rank": structure.free_rank,
            "order": structure.order if structure.is_finite else INFINITE,
            "representatives": representatives}


def _semicentralizer(desc: HomotopyDescriptor, data, args) -> dict:
    return {"basis": [list(v) for v in semicentralizer(desc)]}


def _jezierski(desc: HomotopyDescriptor, data, args) -> dict:
    return {"D": jezierski_D(desc)}


def _d1(ch, data, args) -> dict:
    return docs.RingDocument((ch.n, boundary_d1(ch))).json()


def _d2(ch, data, args) -> dict:
    return docs.ChainDocument(boundary_d2(ch)).json()


def _reduce(ch, data, args) -> dict:
    desc = HomotopyDescriptor(ch.phi, docs.class_vector(data))
    canonical, certificate = reduce_to_canonical(ch)
    coefficients = homology_coefficients(canonical, desc)
    return {"canonical": docs.ChainDocument(canonical).json(),
            "certificate": docs.Chain2Document(certificate).json(),
            "components": [{"representative": list(rep.exponents), "coefficient": k}
                           for rep, k in sorted(coefficients.items())],
            "N": len(coefficients)}


def _trace(problem: docs.TraceProblem, data, args) -> dict:
    desc = problem.desc
    chain = tensor_trace(problem.P, problem.Q, problem.sign, phi=desc.phi)
    out = {"chain": docs.ChainDocument(chain).json()}
    try:
        N = len(trace_components(chain, desc))
        lefschetz = list(trace_lefschetz(chain, desc))
    except RankPrecondition as exc:
        logger.info("trace cannot be reduced: %s", exc)
        out.update(N=None, lefschetz=None, reason=str(exc))
        return out
    out.update(N=N, lefschetz=lefschetz)
    return out


def _oracle(desc: HomotopyDescriptor, data, args) -> dict:
    if args.epsilon is not None:
        epsilon = parse_epsilon(args.epsilon)
    else:
        epsilon = choose_generic_epsilon(desc, args.seed)
    h = LinearHomotopy(desc, epsilon)
    if FixedSetMethod(args.method.upper()) is FixedSetMethod.EXACT:
        report = fixed_set_exact(h)
    else:
        report = fixed_set_grid(h, args.resolution, args.tol,
                                workers=args.workers, samples=args.samples)
    out = {"components": report.component_count, "method": report.method.value}
    if args.samples:
        out["samples"] = [{"x": [docs.fraction_text(v) for v in x], "t": docs.fraction_text(t)}
                          for x, t in report.samples]
    return out


def _bundle_t2(d, data, args) -> dict:
    out = {"N": bundle_T2_min_circles(d)}
    if d.case is not None:
        out["case"] = d.case
    return out


def _bundle_s1(k: int, data, args) -> dict:
    return {"N": bundle_S1_min_circles(k)}


COMMANDS: List[Command] = [
    Command("classic", "classical Nielsen number |det(phi - I)|",
            docs.ProblemDocument, docs.ClassicResult, _classic),
    Command("one-param", "one-parameter Nielsen number N(F)",
            docs.ProblemDocument, docs.OneParamResultSchema, _one_param),
    Command("lefschetz", "one-parameter Lefschetz class ±N·alpha",
            docs.ProblemDocument, docs.LefschetzResult, _lefschetz),
    Command("semiconj", "semiconjugacy classes of the homotopy",
            docs.ProblemDocument, docs.SemiconjResult, _semiconj),
    Command("semicentralizer", "basis of the semicentralizer ker(phi - I)",
            docs.ProblemDocument, docs.SemicentralizerResult, _semicentralizer),
    Command("jezierski", "gcd of the maximal minors of [(phi - I) | c]",
            docs.ProblemDocument, docs.JezierskiResult, _jezierski),
    Command("hochschild-d1", "boundary of a Hochschild 1-chain",
            docs.ChainDocument, docs.RingSchema, _d1),
    Command("hochschild-d2", "boundary of a Hochschild 2-chain",
            docs.Chain2Document, docs.ChainSchema, _d2),
    Command("hochschild-reduce", "reduce a 1-cycle to u1⊗D form with a certificate",
            docs.ChainDocument, docs.ReduceResult, _reduce),
    Command("trace", "the trace of P⊗Q and its C-components",
            docs.TraceDocument, docs.TraceResult, _trace),
    Command("oracle", "count fixed circles of the linear representative",
            docs.ProblemDocument, docs.OracleResult, _oracle),
    Command("bundle-t2", "fixed circles of a fiber-preserving map of a T^2-bundle",
            docs.BundleT2Document, docs.BundleResult, _bundle_t2),
    Command("bundle-s1", "fixed circles of g(x, t) = (x + k t, t) on the 2-torus",
            docs.BundleS1Document, docs.BundleResult, _bundle_s1),
]


# ══════════════════════════════ parsing ══════════════════════════════
def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="torus-nielsen",
                     description="Fixed point invariants of homotopies on the n-torus.")
    sub = parser.add_subparsers(dest="command", metavar="SUBCOMMAND", required=True)
    for command in COMMANDS:
        p = sub.add_parser(command.name, help=command.help, description=command.help,
                           epilog="input document:\n" + command.document.Schema.describe(),
                           formatter_class=argparse.RawDescriptionHelpFormatter)
        p.add_argument("--input", required=True,
                       help="inline JSON or the path of a JSON file")
        p.add_argument("--format", choices=("json", "text"), default="json")
        if command.name == "oracle":
            p.add_argument("--method", choices=("exact", "grid"), default="exact")
            p.add_argument("--resolution", type=int, default=None,
                           help="grid points per axis (default from config)")
            p.add_argument("--tol", type=float, default=None)
            p.add_argument("--epsilon", default=None,
                           help='offset such as "1/11,1/13" (default: chosen from --seed)')
            p.add_argument("--seed", type=int, default=None)
            p.add_argument("--samples", action="store_true",
                           help="report one point per component")
            p.add_argument("--workers", type=int, default=None)
    return parser


def render_text(doc: Dict[str, Any]) -> str:
    """
    >>> print(render_text({"N": 2, "alpha": [1, 0], "reason": None}))
    N: 2
    alpha: [1,0]
    reason: null
    """
    lines = []
    for key, value in doc.items():
        shown = value if isinstance(value, (int, str)) and not isinstance(value, bool) \
            else dump_document(value)
        lines.append(f"{key}: {shown}")
    return "\n".join(lines)


def _emit(doc: Dict[str, Any], fmt: str) -> str:
    return render_text(doc) if fmt == "text" else dump_document(doc)


def _error_document(exc: Exception) -> Dict[str, Any]:
    return {"error": {"type": type(exc).__name__, "message": str(exc),
                      "expected": getattr(exc, "expected", "")}}


def _failure(code: int, exc: Exception, fmt: str) -> Tuple[int, str]:
    doc = _error_document(exc)
    ok, *detail = docs.ErrorResult.validate_with_error(doc)
    if not ok:
        logger.error("error document does not match ErrorResult: %s", detail[0])
        code = EXIT_INVARIANT
        doc = _error_document(InvariantViolation(f"bad error document: {detail[0]}"))
    return code, _emit(doc, fmt)


def _check_result(schema: type, doc: Dict[str, Any]):
    ok, *detail = schema.validate_with_error(doc)
    if not ok:
        raise InvariantViolation(f"result does not match {schema.__name__}: {detail[0]}")


def _configure_logging():
    name = str(config["log-level"]).upper()
    level = logging.getLevelName(name)
    if not isinstance(level, int):
        raise MalformedInput(f"unknown log level {config['log-level']!r}",
                             "TORUS_NIELSEN_LOG_LEVEL must be one of "
                             "DEBUG, INFO, WARNING, ERROR, CRITICAL")
    logging.basicConfig(stream=sys.stderr, level=level,
                        format="%(levelname)s %(name)s: %(message)s")


def run(argv: Optional[List[str]] = None) -> Tuple[int, str]:
    """Execute one subcommand; returns the exit code and the output text."""
    fmt = "json"
    try:
        _configure_logging()
        args = build_parser().parse_args(argv)
        fmt = args.format
        command = next(c for c in COMMANDS if c.name == args.command)
        data = load_document(args.input)
        wrapper: GenericWrapper = command.document.from_dict(data)
        logger.debug("%s on %s", command.name, data)
        doc = command.handler(wrapper.value, data, args)
        _check_result(command.result, doc)
        return EXIT_OK, _emit(doc, fmt)
    except TorusNielsenError as exc:
        logger.info("rejected: %s", exc)
        return _failure(EXIT_INPUT, exc, fmt)
    except InvariantViolation as exc:
        logger.error("internal invariant broken: %s", exc)
        return _failure(EXIT_INVARIANT, exc, fmt)
    except SystemExit as exc:
        # --help
        return int(exc.code or 0), ""


def main():
    code, text = run()
    if text:
        print(text)
    sys.exit(code)
