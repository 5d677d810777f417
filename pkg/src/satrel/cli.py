"""Command-line front end.

Exit codes: 0 success or true, 1 false or invalid, 2 input error, 3 a
resource bound was hit.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, fields

from .sexpr import ParseError, read_all, split_header
from .sexpr import tomllib

EXIT_OK, EXIT_FALSE, EXIT_INPUT, EXIT_RESOURCE = 0, 1, 2, 3


class InputError(Exception):
    pass


class ResourceBound(Exception):
    pass


@dataclass
class Config:
    mode: str | None = None
    depth: int = 3
    budget: int = 10**6
    rank_bound: int = 2
    format: str = "human"
    table_cap: int = 200_000
    stage_cap: int = 4
    connectives: int = 1

    def validate(self):
        for f in ("depth", "budget", "rank_bound", "table_cap", "stage_cap"):
            if getattr(self, f) <= 0:
                raise InputError(f"{f} must be positive")
        if self.format not in ("human", "sexp"):
            raise InputError("format is human or sexp")


def load_config(args) -> Config:
    cfg = Config()
    if args.config:
        try:
            with open(args.config, "rb") as fh:
                data = tomllib.load(fh)
        except (OSError, tomllib.TOMLDecodeError) as exc:
            raise InputError(f"config: {exc}") from None
        known = {f.name for f in fields(Config)}
        for k, v in data.items():
            k = k.replace("-", "_")
            if k not in known:
                raise InputError(f"config: unknown key {k!r}")
            setattr(cfg, k, v)
    for f in fields(Config):
        v = getattr(args, f.name, None)
        if v is not None:
            setattr(cfg, f.name, v)
    cfg.validate()
    return cfg


# ------------------------------------------------------------ io helpers


def read_text(path: str) -> str:
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(str(exc)) from None


def write_text(path: str | None, text: str):
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise InputError(str(exc)) from None


def read_formulas(text: str, default_sig: str = "s"):
    from .sequent.io import header_signature
    from .syntax import sexpr_to_formula

    header, body, offset = split_header(text)
    sig = header_signature(header, default_sig)
    return [sexpr_to_formula(x, sig) for x in read_all(body, offset)], sig


def with_header(header, body: str) -> str:
    """Prefix a ``+++`` TOML header; ``header`` is a signature name or a dict."""
    if isinstance(header, str):
        header = {"signature": header}
    lines = [f"{k} = {json.dumps(v)}" for k, v in header.items() if isinstance(v, (str, int, list))]
    return "+++\n" + "\n".join(lines) + "\n+++\n" + body + "\n"


def out(cfg: Config, human: str, sexp):
    from .sexpr import write

    print(human if cfg.format == "human" else (sexp if isinstance(sexp, str) else write(sexp)))


def quoted(s: str) -> str:
    return json.dumps(s, ensure_ascii=False)


# ------------------------------------------------------------ commands


def cmd_check(args, cfg):
    from .sequent import check_proof
    from .sequent.io import read_proof_file

    proof, _, _ = read_proof_file(read_text(args.proof))
    mode = (cfg.mode or "lk").lower()
    if mode not in ("lk", "lkminus"):
        raise InputError("check mode is lk or lkminus")
    verdict = check_proof(proof, "LK" if mode == "lk" else "LKminus")
    if verdict:
        out(cfg, f"valid {mode} proof ({proof.size()} nodes)", ["valid", proof.size()])
        return EXIT_OK
    print(verdict.certificate, file=sys.stderr)
    path = ["path", *verdict.path]
    out(cfg, f"invalid: {verdict.certificate}", ["invalid", path, ["rule", verdict.rule], quoted(verdict.reason or "")])
    return EXIT_FALSE


def cmd_cutelim(args, cfg):
    from .sequent import StepBudgetExceeded, check_proof, eliminate_cuts
    from .sequent.io import proof_to_sexpr, read_proof_file

    proof, sig, header = read_proof_file(read_text(args.proof))
    verdict = check_proof(proof, "LK")
    if not verdict:
        print(verdict.certificate, file=sys.stderr)
        return EXIT_FALSE
    before = proof.size()
    cuts = sum(n.rule == "cut" for n in proof.nodes())
    try:
        result = eliminate_cuts(proof, budget=cfg.budget)
    except StepBudgetExceeded as exc:
        print(f"cut elimination stopped: {exc}; {before} nodes, {cuts} cuts remain in the input", file=sys.stderr)
        raise ResourceBound(str(exc)) from None
    print(f"nodes: {before} -> {result.size()}; cuts: {cuts} -> 0", file=sys.stderr)
    write_text(args.output, with_header(header or "s", proof_to_sexpr(result)))
    return EXIT_OK


def counter_sexpr(ci) -> list:
    """A counter-interpretation as (counter (seq ...) (structure ...) (assign ...))."""
    from .sequent.io import sequent_to_sexpr

    st = ci.structure
    names: dict = {}
    for sort, carrier in sorted(st.carriers.items()):
        for e in carrier:
            names[(sort, e)] = f"e{len(names)}"
    elem = {e: n for (_, e), n in names.items()}
    carrier = ["carrier", *[n for (s, _), n in names.items() if s == "set"]]
    denote = ["denote", *[[n, quoted(str(e))] for (_, e), n in names.items()]]
    preds = [["pred", p, *[[elem[a] for a in t] for t in sorted(tuples, key=repr)]]
             for p, tuples in sorted(st.pred_tuples.items())]
    ops = [["op", o, *[[[elem[a] for a in k], elem[v]] for k, v in sorted(tab.items(), key=repr)]]
           for o, tab in sorted(st.op_tables.items())]
    assign = ["assign", *[[v.name, elem[a]] for v, a in sorted(ci.assignment.items(), key=lambda kv: kv[0].name)]]
    return ["counter", sequent_to_sexpr(ci.sequent), ["structure", carrier, *preds, *ops], assign, denote]


def cmd_prove(args, cfg):
    from .sequent import CounterInterpretation, NotFoundWithinDepth, prove_lkminus
    from .sequent.io import proof_to_sexpr, read_sequent_file
    from .sexpr import write

    sq, _, header = read_sequent_file(read_text(args.sequent))
    r = prove_lkminus(sq, cfg.depth)
    if isinstance(r, NotFoundWithinDepth):
        print(f"no proof or counter-interpretation within depth {cfg.depth}", file=sys.stderr)
        raise ResourceBound("depth")
    if isinstance(r, CounterInterpretation):
        out(cfg, "not derivable; counter-interpretation:\n" + write(counter_sexpr(r)), counter_sexpr(r))
        return EXIT_FALSE
    text = proof_to_sexpr(r)
    if args.output:
        write_text(args.output, with_header(header or "s", text))
    out(cfg, f"derivable ({r.size()} nodes)" + ("" if args.output else "\n" + text), text)
    return EXIT_OK


def _structure(args, cfg):
    from .semantics.io import read_structure
    from .sexpr import read_one

    text = read_text(args.structure)
    _, body, offset = split_header(text)
    x = read_one(body, offset)
    for part in x[1:]:
        if isinstance(part, list) and part and part[0] == "stage" and int(part[1]) > cfg.stage_cap:
            raise ResourceBound(f"stage {part[1]} exceeds the stage cap {cfg.stage_cap}")
    return read_structure(text)


def cmd_eval(args, cfg):
    from .semantics import evaluate
    from .semantics.io import parse_assignment

    st = _structure(args, cfg)
    formulas, _ = read_formulas(read_text(args.formula))
    a = parse_assignment(args.assign or [], st)
    verdicts = [evaluate(st, f, a) for f in formulas]
    ok = all(verdicts)
    human = "\n".join("true" if v else "false" for v in verdicts)
    out(cfg, human, "true" if ok else "false")
    return EXIT_OK if ok else EXIT_FALSE


def cmd_models_star(args, cfg):
    from .semantics import ResourceLimit, failing_sentences
    from .semantics.io import parse_assignment

    st = _structure(args, cfg)
    a = parse_assignment(args.assign or [], st)
    try:
        if args.library or args.theory:
            if args.library:
                from .theories import theory_library

                lib = theory_library()
                if args.library not in lib:
                    raise InputError(f"unknown theory {args.library!r}; one of {', '.join(lib)}")
                theory = lib[args.library]
            else:
                from .theories import read_theory

                theory = read_theory(read_text(args.theory))
            failing = failing_sentences(st, theory, cfg.connectives)
        elif args.formula:
            from .semantics import models_star
            from .syntax.ops import free_vars

            fs, _ = read_formulas(read_text(args.formula))
            failing = [f"#{k}" for k, f in enumerate(fs)
                       if not models_star(st, f, {v: x for v, x in a.items() if v in free_vars(f)}, "fast")]
        else:
            raise InputError("give a formula file, --theory or --library")
    except ResourceLimit as exc:
        raise ResourceBound(str(exc)) from None
    ok = not failing
    shown = ", ".join(failing[:8]) + (f" and {len(failing) - 8} more" if len(failing) > 8 else "")
    human = "true" if ok else f"false; failing: {shown}"
    out(cfg, human, ["true"] if ok else ["false", *[quoted(lab) for lab in failing]])
    return EXIT_OK if ok else EXIT_FALSE


def cmd_theta_prime(args, cfg):
    from .syntax import print_expr
    from .theories import ReAxiomatization, build_theta_prime, enumerating, instantiate_theta_phi
    from .util import deep_recursion

    fs, _ = read_formulas(read_text(args.d))
    try:
        if args.enumerate:
            R = enumerating(*fs)
        else:
            if len(fs) != 1:
                raise InputError("expected one formula D(x, y)")
            R = ReAxiomatization(fs[0])
    except ValueError as exc:
        raise InputError(str(exc)) from None
    with deep_recursion():
        tp = build_theta_prime(R)
        if args.phi:
            phis, _ = read_formulas(read_text(args.phi))
            if len(phis) != 1:
                raise InputError("expected one formula φ")
            sentence, sig = instantiate_theta_phi(tp, phis[0]), "s"
        else:
            sentence, sig = tp, "c"
        text = print_expr(sentence)
    write_text(args.output, with_header(sig, text))
    if args.output:
        print(f"wrote {len(text)} characters to {args.output}", file=sys.stderr)
    return EXIT_OK


def cmd_translate(args, cfg):
    from .sequent.io import proof_to_sexpr, read_proof_file
    from .syntax import print_expr
    from .theories import NotTemplateProof, QuantifiedClassVariable, eliminate_with_report

    proof, _, _ = read_proof_file(read_text(args.proof), "c")
    try:
        result, report = eliminate_with_report(proof, depth=cfg.depth)
    except QuantifiedClassVariable as exc:
        raise InputError(f"outside the class-term fragment: {exc}") from None
    except NotTemplateProof as exc:
        print(f"translation failed: {exc}", file=sys.stderr)
        return EXIT_FALSE
    for f in report.discharged:
        print(f"discharged {print_expr(f)}", file=sys.stderr)
    for f, g in report.replaced:
        print(f"replaced {print_expr(f)} by {print_expr(g)}", file=sys.stderr)
    write_text(args.output, with_header("s", proof_to_sexpr(result)))
    return EXIT_OK


def cmd_force(args, cfg):
    from .forcing import Forcing, RankBoundExceeded
    from .forcing.io import read_names, read_poset
    from .syntax import print_expr
    from .syntax.ast import Variable
    from .syntax.ops import free_vars

    P = read_poset(read_text(args.poset))
    names = read_names(read_text(args.names), P)
    formulas, _ = read_formulas(read_text(args.formulas))
    mode = (cfg.mode or "star").lower()
    if mode not in ("star", "recursive", "semantic"):
        raise InputError("force mode is star, recursive or semantic")
    try:
        extra = [y for x in names.values() for y in x.constituents()]
        F = Forcing(P, rank_bound=cfg.rank_bound)
        F = Forcing(P, tuple(dict.fromkeys(F.pool + tuple(extra))), cfg.rank_bound)
    except RankBoundExceeded as exc:
        raise ResourceBound(str(exc)) from None
    method = {"star": F.forces_star, "recursive": F.forces_recursive, "semantic": F.forces_semantic}[mode]
    envs = []
    for f in formulas:
        env = {}
        for v in free_vars(f):
            if v.name not in names:
                raise InputError(f"no name {v.name!r} for the free variable of {print_expr(f)}")
            env[Variable(v.name)] = names[v.name]
        envs.append(env)
    table = [[method(p, f, env) for f, env in zip(formulas, envs)] for p in P.elements]
    values = [sorted(F.boolean_value(f, env), key=str) for f, env in zip(formulas, envs)]
    width = max(len(str(p)) for p in P.elements) + 2
    lines = [f"{k}: {print_expr(f)}" for k, f in enumerate(formulas)]
    lines.append(" " * width + " ".join(f"{k:>3}" for k in range(len(formulas))))
    for p, row in zip(P.elements, table):
        lines.append(f"{str(p):<{width}}" + " ".join(f"{'⊩' if v else '.':>3}" for v in row))
    lines.append("values: " + "  ".join("{" + ",".join(map(str, v)) + "}" for v in values))
    sexp = ["force", ["formulas", *[print_expr(f) for f in formulas]],
            ["table", *[[str(p), *row] for p, row in zip(P.elements, table)]],
            ["values", *[[str(m) for m in v] for v in values]]]
    out(cfg, "\n".join(lines), sexp)
    return EXIT_OK


# ------------------------------------------------------------ parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--mode", help="check: lk|lkminus; force: star|recursive|semantic")
    common.add_argument("--depth", type=int, help="search depth (prove, translate)")
    common.add_argument("--budget", type=int, help="cut-elimination step budget")
    common.add_argument("--rank-bound", dest="rank_bound", type=int, help="largest name rank (force)")
    common.add_argument("--format", choices=("human", "sexp"))
    common.add_argument("--config", help="TOML file with defaults for the flags")
    common.add_argument("--connectives", type=int, help="schema instances up to this many connectives")

    ap = argparse.ArgumentParser(prog="satrel", description="Satisfaction relations, sequent proofs and finite forcing.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="check an LK or LK⁻ proof")
    p.add_argument("proof")
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("cutelim", parents=[common], help="eliminate cuts from an LK proof")
    p.add_argument("proof")
    p.add_argument("-o", "--output")
    p.set_defaults(fn=cmd_cutelim)

    p = sub.add_parser("prove", parents=[common], help="bounded LK⁻ proof search")
    p.add_argument("sequent")
    p.add_argument("-o", "--output")
    p.set_defaults(fn=cmd_prove)

    p = sub.add_parser("eval", parents=[common], help="evaluate formulas on a finite structure")
    p.add_argument("structure")
    p.add_argument("formula")
    p.add_argument("--assign", nargs="*", help="var=value pairs")
    p.set_defaults(fn=cmd_eval)

    p = sub.add_parser("models-star", parents=[common], help="decide ⊨* for formulas or a theory")
    p.add_argument("structure")
    p.add_argument("formula", nargs="?")
    p.add_argument("--theory")
    p.add_argument("--library")
    p.add_argument("--assign", nargs="*")
    p.set_defaults(fn=cmd_models_star)

    p = sub.add_parser("theta-prime", parents=[common], help="build θ′ from D(x, y), or θ^φ with --phi")
    p.add_argument("d")
    p.add_argument("--enumerate", action="store_true", help="the file lists the sentences to enumerate")
    p.add_argument("--phi")
    p.add_argument("-o", "--output")
    p.set_defaults(fn=cmd_theta_prime)

    p = sub.add_parser("translate", parents=[common], help="eliminate class terms from a proof")
    p.add_argument("proof")
    p.add_argument("-o", "--output")
    p.set_defaults(fn=cmd_translate)

    p = sub.add_parser("force", parents=[common], help="condition × formula forcing table")
    p.add_argument("poset")
    p.add_argument("names")
    p.add_argument("formulas")
    p.set_defaults(fn=cmd_force)
    return ap


def main(argv=None) -> int:
    from .forcing import PosetError, RankBoundExceeded
    from .semantics import ResourceLimit, UnassignedVariable
    from .sequent import StepBudgetExceeded
    from .syntax.signature import SortError
    from .util import deep_recursion

    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        cfg = load_config(args)
        with deep_recursion():
            return args.fn(args, cfg)
    except (ResourceBound, ResourceLimit, StepBudgetExceeded, RankBoundExceeded) as exc:
        print(f"resource bound: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (InputError, ParseError, SortError, PosetError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except UnassignedVariable as exc:
        print(f"input error: unassigned variables {exc.args[0]}", file=sys.stderr)
        return EXIT_INPUT
    except (ValueError, KeyError, TypeError) as exc:
        print(f"input error: {exc.args[0] if exc.args else exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
