#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
LexKit - Banco de trabajo para el cálculo λex
Línea de Comandos

Uso:
    python run.py sn "(\\x.x x)(\\x.x x)"          # veredicto SN (0/1/2)
    python run.py reduce "(z y x)[y/x x][x/v]"      # forma normal y traza
    python run.py subtype "A&B" "A"                 # subtipado
    python run.py suite all                         # suites de aceptación
    python run.py suite all --sample 500            # suites muestreadas (rápido)
    python run.py --help                            # ayuda

Códigos de salida: 64 uso, 65 sintaxis, 70 error interno.
"""

import json
import logging
import sys
from dataclasses import dataclass

import click

from lexkit.composition import full_composition_trace
from lexkit.config import load_config
from lexkit.engine import Policy, RewriteEngine, SnStatus
from lexkit.errors import ConfigError, FuelExhausted, IllFormedInput, LexkitError, ParseError, UnificationFailure
from lexkit.intersection import (
    check_derivation, check_judgment_upto_subtype, infer_simple, revb, revb_trace, subtype,
)
from lexkit.labelled import LabelledCalculus, label_context, unlabel, xc
from lexkit.logs import setup_logging
from lexkit.perpetual import IsnChecker, PerpetualStrategy, psn_sample
from lexkit.rules import LAMBDA_EX, get_ruleset
from lexkit.superdev import ConfluenceStatus, ZStatus, confluence_check, superdev, z_check
from lexkit.syntax import (
    dump_derivation, load_derivation, parse_term, parse_type, print_term, print_type, trace_to_json,
)
from lexkit.terms import EqMode, is_label_free
from tools.suites import SUITE_NAMES, overall_status, run_suites

EXIT_USAGE = 64
EXIT_PARSE = 65
EXIT_INTERNAL = 70

SN_EXIT = {SnStatus.PROVED_SN: 0, SnStatus.PROVED_NOT_SN: 1, SnStatus.UNKNOWN: 2}

logger = logging.getLogger('lexkit.cli')


@dataclass
class Session:
    config: object
    settings: object
    engine: RewriteEngine

    @property
    def as_json(self):
        return self.settings.output == 'json'

    def emit(self, data, lines):
        """JSON ordenado o texto; siempre por stdout"""
        if self.as_json:
            click.echo(json.dumps(data, sort_keys=True, ensure_ascii=False, indent=2))
        else:
            for line in lines:
                click.echo(line)


def _trace_lines(trace):
    lines = [f"  {print_term(trace.root)}"]
    for step in trace.steps:
        position = ''.join(str(i) for i in step.position) or 'ε'
        lines.append(f"  -{step.rule.value}@{position}-> {print_term(step.after)}")
    return lines


def _verdict_json(verdict):
    return {
        'verdict': verdict.verdict.value,
        'eta': verdict.eta,
        'max_size': verdict.max_size,
        'witness': [print_term(t) for t in verdict.witness],
        'nodes': verdict.nodes,
    }


def _verdict_lines(verdict):
    lines = [verdict.verdict.value]
    if verdict.proved_sn:
        lines.append(f"  η = {verdict.eta}, maxsize = {verdict.max_size}")
    if verdict.witness:
        lines.append("  ciclo: " + ' -> '.join(print_term(t) for t in verdict.witness))
    return lines


def _ruleset_option(function):
    return click.option(
        '--ruleset', default=None, help='Beta, LambdaX, LambdaEx, LambdaXDirector, Uex, LambdaUex',
    )(function)


@click.group()
@click.option('--config', 'config_path', type=click.Path(dir_okay=False), default=None, help='Fichero INI')
@click.option('--json', 'as_json', is_flag=True, help='Salida JSON')
@click.option('--node-fuel', type=int, default=None)
@click.option('--step-fuel', type=int, default=None)
@click.option('--class-bound', type=int, default=None)
@click.option('--join-depth', type=int, default=None)
@click.option('--seed', type=int, default=None)
@click.option('-v', '--verbose', is_flag=True, help='Logging DEBUG por stderr')
@click.pass_context
def cli(ctx, config_path, as_json, node_fuel, step_fuel, class_bound, join_depth, seed, verbose):
    """LexKit: banco de trabajo para el cálculo λex"""
    config = load_config(config_path)
    settings = config.cli.override(
        node_fuel=node_fuel,
        step_fuel=step_fuel,
        class_bound=class_bound,
        join_depth=join_depth,
        seed=seed,
        output='json' if as_json else None,
    )
    setup_logging(config.logging, verbose)
    ctx.obj = Session(config, settings, RewriteEngine.from_config(settings))


# =================== TÉRMINOS ===================

@cli.command('parse')
@click.argument('term')
@click.pass_obj
def parse_command(session, term):
    """Reimprimir un término y mostrar sus claves canónicas"""
    t = parse_term(term)
    data = {'term': print_term(t), 'alpha_key': session.engine.key(t, EqMode.ALPHA)}
    lines = [data['term'], f"  α: {data['alpha_key']}"]
    mode = EqMode.E if is_label_free(t) else EqMode.EU
    data['e_key'] = session.engine.key(t, mode)
    lines.append(f"  {mode.value}: {data['e_key']}")
    session.emit(data, lines)
    return 0


@cli.command()
@click.argument('term')
@_ruleset_option
@click.option('--policy', type=click.Choice(['leftmost', 'perpetual']), default=None)
@click.option('--fuel', type=int, default=None, help='Máximo de pasos')
@click.pass_obj
def reduce(session, term, ruleset, policy, fuel):
    """Forma normal y traza de reducción"""
    t = parse_term(term)
    rs = get_ruleset(ruleset or session.settings.ruleset)
    if policy is None:
        policy = session.settings.policy if rs is LAMBDA_EX else 'leftmost'
    try:
        final, trace = session.engine.normalize(t, rs, fuel or session.settings.step_fuel, Policy(policy))
    except FuelExhausted as exc:
        trace = exc.partial
        session.emit(
            {'status': 'fuel', 'trace': trace_to_json(trace) if trace else None},
            ['Combustible agotado'] + (_trace_lines(trace) if trace else []),
        )
        return 2
    session.emit(
        {'normal_form': print_term(final), 'trace': trace_to_json(trace)},
        [print_term(final)] + _trace_lines(trace),
    )
    return 0


@cli.command()
@click.argument('term')
@_ruleset_option
@click.pass_obj
def reducts(session, term, ruleset):
    """Reductos en un paso"""
    t = parse_term(term)
    rs = get_ruleset(ruleset or session.settings.ruleset)
    steps = session.engine.reducts(t, rs)
    session.emit(
        [{'rule': s.rule.value, 'position': list(s.position), 'term': print_term(s.after)} for s in steps],
        [f"{s.rule.value}\t{print_term(s.after)}" for s in steps],
    )
    return 0


@cli.command()
@click.argument('term')
@_ruleset_option
@click.pass_obj
def explore(session, term, ruleset):
    """Resumen del grafo de reducción"""
    rs = get_ruleset(ruleset or session.settings.ruleset)
    graph = session.engine.explore(parse_term(term), rs)
    edges = sum(len(out) for out in graph.edges.values())
    data = {'status': graph.status, 'nodes': len(graph.nodes), 'edges': edges, 'cyclic': graph.cyclic}
    session.emit(data, [f"{graph.status}: {len(graph.nodes)} nodos, {edges} aristas, cíclico={graph.cyclic}"])
    return 0


@cli.command()
@click.argument('term')
@_ruleset_option
@click.pass_obj
def sn(session, term, ruleset):
    """Veredicto de normalización fuerte (0 SN, 1 no SN, 2 desconocido)"""
    rs = get_ruleset(ruleset or session.settings.ruleset)
    verdict = session.engine.sn_verdict(parse_term(term), rs)
    session.emit(_verdict_json(verdict), _verdict_lines(verdict))
    return SN_EXIT[verdict.verdict]


# =================== SN ===================

def _isn_lines(node, depth=0):
    lines = [f"{'  ' * depth}{node.rule}: {print_term(node.term)}"]
    for premise in node.premises:
        lines += _isn_lines(premise, depth + 1)
    return lines


def _isn_json(node):
    return {'rule': node.rule, 'term': print_term(node.term), 'premises': [_isn_json(p) for p in node.premises]}


@cli.command()
@click.argument('term')
@click.pass_obj
def isn(session, term):
    """Derivación ISN o Unknown"""
    derivation = IsnChecker(session.engine, session.settings.depth_fuel).derive(parse_term(term))
    if derivation is None:
        session.emit({'status': 'Unknown'}, ['Unknown'])
        return 2
    session.emit({'status': 'ISN', 'derivation': _isn_json(derivation)}, _isn_lines(derivation))
    return 0


@cli.command()
@click.argument('term')
@click.option('--fuel', type=int, default=None, help='Máximo de pasos de la estrategia')
@click.pass_obj
def strategy(session, term, fuel):
    """Traza de la estrategia perpetua"""
    t = parse_term(term)
    try:
        trace = PerpetualStrategy(session.engine).run(t, fuel or session.settings.step_fuel)
    except FuelExhausted as exc:
        trace = exc.partial
    data = {
        'status': trace.status,
        'steps': [
            {'chain': [c.value for c in s.chain], 'position': list(s.position), 'term': print_term(s.result)}
            for s in trace.steps
        ],
    }
    lines = [print_term(t)] + [
        f"  {' > '.join(c.value for c in s.chain)} -> {print_term(s.result)}" for s in trace.steps
    ] + [trace.status]
    session.emit(data, lines)
    return {'normal': 0, 'unknown': 2}.get(trace.status, 2)


@cli.command()
@click.argument('term')
@click.pass_obj
def psn(session, term):
    """Comparar SN bajo β y bajo λex"""
    report = psn_sample(session.engine, parse_term(term))
    data = {
        'beta': _verdict_json(report['beta']),
        'lex': _verdict_json(report['lex']),
        'violation': report['violation'],
    }
    session.emit(data, [
        f"β: {report['beta'].verdict.value}",
        f"λex: {report['lex'].verdict.value}",
        f"violación: {report['violation']}",
    ])
    return 1 if report['violation'] else 0


# =================== CÁLCULO ETIQUETADO ===================

def _labelled(session, term):
    t = parse_term(term)
    context = label_context(t)
    calculus = LabelledCalculus(session.engine)
    if not calculus.is_labelled(t, context):
        raise IllFormedInput("El término no está etiquetado correctamente")
    return t, calculus


@cli.command()
@click.argument('term')
@click.option('--var', 'variables', multiple=True, help='Variables para ar (por defecto, las libres fuera de S)')
@click.pass_obj
def measure(session, term, variables):
    """Medidas ar, dep, k y φ de un término etiquetado"""
    t, calculus = _labelled(session, term)
    report = calculus.measure_report(t, list(variables) or None)
    data = {'ar': report.ar, 'dep': report.dep, 'k': report.k, 'phi': report.phi}
    lines = [f"ar_{x} = {value}" for x, value in report.ar.items()]
    lines += [f"dep = {report.dep}", f"k = {report.k}"]
    lines += [f"φ({body}) = {value}" for body, value in report.phi.items()]
    session.emit(data, lines)
    return 0


@cli.command('xc')
@click.argument('term')
@click.pass_obj
def xc_command(session, term):
    """Calcular las sustituciones etiquetadas"""
    t, _ = _labelled(session, term)
    result = print_term(xc(t))
    session.emit({'term': result}, [result])
    return 0


@cli.command('unlabel')
@click.argument('term')
@click.pass_obj
def unlabel_command(session, term):
    """Convertir las sustituciones etiquetadas en explícitas"""
    result = print_term(unlabel(parse_term(term)))
    session.emit({'term': result}, [result])
    return 0


# =================== TIPOS ===================

def _environment(entries):
    env = {}
    for entry in entries:
        name, sep, text = entry.partition(':')
        if not sep:
            raise click.BadParameter(f"Se esperaba nombre:tipo, recibido {entry!r}", param_hint='--env')
        if name.strip() in env:
            raise click.BadParameter(f"{name.strip()} ligado dos veces", param_hint='--env')
        env[name.strip()] = parse_type(text)
    return env


@cli.command()
@click.argument('term')
@click.option('--simple', is_flag=True, help='Inferencia de tipos simples')
@click.option('--type', 'type_text', default=None, help='Tipo ∩ a comprobar')
@click.option('--env', 'entries', multiple=True, help='Ligadura nombre:tipo')
@click.pass_obj
def typecheck(session, term, simple, type_text, entries):
    """Tipo simple principal, o búsqueda acotada de una derivación ∩"""
    t = parse_term(term)
    env = _environment(entries)
    if simple or type_text is None:
        try:
            ty = infer_simple(env, t)
        except UnificationFailure as exc:
            session.emit({'typable': False, 'error': str(exc)}, [f"No tipable: {exc}"])
            return 1
        session.emit({'typable': True, 'type': print_type(ty)}, [print_type(ty)])
        return 0
    result = check_judgment_upto_subtype(env, t, parse_type(type_text))
    if not result.derivable:
        session.emit({'status': result.status}, [result.status])
        return 1
    session.emit(
        {'status': result.status, 'derivation': dump_derivation(result.derivation)},
        [result.status, json.dumps(dump_derivation(result.derivation), ensure_ascii=False)],
    )
    return 0


@cli.command('check-derivation')
@click.argument('path', type=click.Path(exists=True, dir_okay=False))
@click.pass_obj
def check_derivation_command(session, path):
    """Verificar una derivación ∩ en JSON"""
    with open(path, encoding='utf-8') as handle:
        try:
            data = json.load(handle)
        except json.JSONDecodeError as exc:
            raise IllFormedInput(f"JSON inválido: {exc}") from exc
    ok, diagnostics = check_derivation(load_derivation(data))
    session.emit({'ok': ok, 'diagnostics': diagnostics}, ['ok'] if ok else diagnostics)
    return 0 if ok else 1


@cli.command('subtype')
@click.argument('left')
@click.argument('right')
@click.pass_obj
def subtype_command(session, left, right):
    """¿left ≪ right?"""
    holds = subtype(parse_type(left), parse_type(right))
    session.emit({'subtype': holds}, ['true' if holds else 'false'])
    return 0 if holds else 1


@cli.command('revb')
@click.argument('term')
@click.pass_obj
def revb_command(session, term):
    """λ-término revb(t) y la traza de pasos B hasta t"""
    t = parse_term(term)
    trace = revb_trace(t)
    session.emit(
        {'revb': print_term(revb(t)), 'trace': trace_to_json(trace)},
        [print_term(revb(t))] + _trace_lines(trace),
    )
    return 0


# =================== SUPERDESARROLLOS ===================

@cli.command('superdev')
@click.argument('term')
@click.pass_obj
def superdev_command(session, term):
    """Superdesarrollo de un metatérmino"""
    result = print_term(superdev(parse_term(term)))
    session.emit({'term': result}, [result])
    return 0


@cli.command()
@click.argument('term')
@click.option('--fuel', type=int, default=None, help='Profundidad máxima de cada tramo')
@click.pass_obj
def zcheck(session, term, fuel):
    """Propiedad Z para cada reducto en un paso"""
    t = parse_term(term)
    reports = z_check(session.engine, t, fuel or session.settings.z_fuel)
    data = [
        {
            'rule': r.step.rule.value,
            'reduct': print_term(r.step.after),
            'status': r.status.value,
            'leg1': trace_to_json(r.leg1) if r.leg1 else None,
            'leg2': trace_to_json(r.leg2) if r.leg2 else None,
        }
        for r in reports
    ]
    lines = [f"•t = {print_term(superdev(t))}"] + [
        f"{r.step.rule.value}\t{print_term(r.step.after)}\t{r.status.value}" for r in reports
    ]
    session.emit(data, lines)
    return 1 if any(r.status is ZStatus.FAILED for r in reports) else 0


@cli.command()
@click.argument('term')
@click.option('--depth', type=int, default=None)
@_ruleset_option
@click.pass_obj
def confluence(session, term, depth, ruleset):
    """Búsqueda acotada de picos no confluentes"""
    rs = get_ruleset(ruleset or session.settings.ruleset)
    report = confluence_check(
        session.engine, parse_term(term), depth or session.settings.confluence_depth, session.settings.join_depth, rs,
    )
    peak = [print_term(p) for p in report.peak]
    lines = [report.status.value] + [f"  {p}" for p in peak]
    session.emit({'status': report.status.value, 'peak': peak, 'pairs': report.pairs}, lines)
    return {ConfluenceStatus.CONFLUENT: 0, ConfluenceStatus.COUNTEREXAMPLE: 1}.get(report.status, 2)


@cli.command('compose')
@click.argument('term')
@click.argument('variable')
@click.argument('body')
@click.pass_obj
def compose_command(session, term, variable, body):
    """Traza de composición completa t[x/u] ->ex t{x:=u}"""
    trace = full_composition_trace(parse_term(term), variable, parse_term(body))
    session.emit(trace_to_json(trace), _trace_lines(trace))
    return 0


# =================== SUITES ===================

@cli.command()
@click.argument('name', type=click.Choice(('all',) + SUITE_NAMES))
@click.option('--jobs', type=int, default=None, help='Procesos (por defecto, CPUs lógicas)')
@click.option('--sample', type=click.IntRange(min=1), default=None,
              help='Muestrear a lo sumo N casos por suite (informa WARNING)')
@click.pass_obj
def suite(session, name, jobs, sample):
    """Ejecutar suites de aceptación y mostrar la tabla de resultados"""
    names = list(SUITE_NAMES) if name == 'all' else [name]
    sizes = dict(session.config.suites)
    if sample is not None:
        sizes['max_cases'] = sample
    results = run_suites(names, session.settings, sizes, jobs)
    status = overall_status(results)
    lines = [f"{'SUITE':<18}{'ESTADO':<10}{'CASOS':>8}{'FALLOS':>8}  MENSAJE"]
    for suite_name, result in results.items():
        lines.append(
            f"{suite_name:<18}{result['status']:<10}{result['cases']:>8}{result['failures']:>8}  {result['message']}"
        )
        lines += [f"    • {detail}" for detail in result['details']]
    lines.append(f"ESTADO GENERAL: {status}")
    session.emit({'suites': results, 'overall_status': status}, lines)
    return 0 if status != 'CRITICAL' else 1


def main(argv=None):
    """Punto de entrada: traduce excepciones a códigos de salida"""
    try:
        result = cli.main(args=argv, prog_name='lexkit', standalone_mode=False)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.exceptions.Abort:
        click.echo('Cancelado', err=True)
        return 1
    except click.ClickException as exc:
        exc.show()
        return EXIT_USAGE
    except ParseError as exc:
        click.echo(f"Error de sintaxis: {exc}", err=True)
        return EXIT_PARSE
    except ConfigError as exc:
        click.echo(f"Error de configuración: {exc}", err=True)
        return EXIT_USAGE
    except LexkitError as exc:
        logger.error(f"{type(exc).__name__}: {exc}")
        click.echo(f"Error: {exc}", err=True)
        return EXIT_INTERNAL
    except Exception as exc:
        logger.exception(f"Error interno: {exc}")
        click.echo(f"Error interno: {exc}", err=True)
        return EXIT_INTERNAL
    return result if isinstance(result, int) else 0


if __name__ == '__main__':
    sys.exit(main())
