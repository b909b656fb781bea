#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
LexKit - Banco de trabajo para el cálculo λex
Suites de Aceptación

Funcionalidades:
- Composición completa y simulación de β
- Estrategia perpetua, ISN, PSN y propiedad IE
- Lemas de medida, terminación de u̲ex y proyecciones del cálculo etiquetado
- Propiedad Z y confluencia sobre metatérminos
- Subtipado, tipos simples, derivaciones ∩ y revb
- Ejecución en paralelo sobre las CPUs lógicas
"""

import logging
import random
import traceback
from concurrent.futures import ProcessPoolExecutor
from datetime import datetime

import psutil

from lexkit.composition import beta_step, full_composition_trace, simulate_beta
from lexkit.engine import COMPLETE, RewriteEngine, SnStatus
from lexkit.enumeration import (
    enumerate_types, labelled_instances, metaterm_cases, pair_cases,
    random_term, random_type, sample, term_cases,
)
from lexkit.errors import LexkitError, NotLiftable
from lexkit.intersection import (
    Arrow, Atom, Inter, check_derivation, check_judgment_upto_subtype, derive_subtype,
    flatten, intersect, is_simply_typable, revb, revb_trace, subtype,
)
from lexkit.labelled import LabelledCalculus, ar, dep, unlabel
from lexkit.perpetual import IsnChecker, PerpetualStrategy, StrategyStep, ie_sample, is_normal_form, psn_sample
from lexkit.rules import EX, LAMBDA_EX, LAMBDA_UEX, LAMBDA_X, UEX, Rule, Trace, check_trace
from lexkit.superdev import (
    ConfluenceStatus, ZStatus, confluence_check, lambda_x_nonconfluence_demo, nonconfluence_peak, z_check,
)
from lexkit.syntax import parse_term, parse_type, print_term
from lexkit.terms import EqMode, ESub, alpha_eq, size, subst

MAX_DETAILS = 5

# Juicios de referencia del sistema ∩: (entorno, término, tipo)
GOLDEN_JUDGMENTS = (
    ({'x': 'A'}, 'x', 'A'),
    ({'x': 'A&B'}, 'x', 'A'),
    ({}, '\\x.x', 'A->A'),
    ({}, '\\x.x', '(A->A)&(B->B)'),
    ({}, '\\x.x x', '(A&(A->B))->B'),
    ({'y': 'A'}, '(\\x.x) y', 'A'),
    ({'y': 'A'}, 'x[x/y]', 'A'),
    ({}, 'x[x/\\y.y]', 'A->A'),
    ({'z': 'A&B'}, '(\\x.\\y.x) z', 'C->A&B'),
    ({'f': 'A->B', 'a': 'A'}, '(f a)[b/a]', 'B'),
)


def _result(failures, cases, message, details=(), recommendations=(), warnings=0):
    if failures:
        status = 'FAIL'
    elif warnings:
        status = 'WARNING'
    else:
        status = 'PASS'
    return {
        'status': status,
        'message': message,
        'cases': cases,
        'failures': failures,
        'warnings': warnings,
        'details': list(details)[:MAX_DETAILS],
        'recommendations': list(recommendations),
    }


class AcceptanceSuites:
    """Suites con nombre; cada una devuelve un dict con status, message, details y recommendations"""

    def __init__(self, settings, sizes, max_cases=None):
        self.settings = settings
        self.sizes = dict(sizes)
        self.max_cases = max_cases if max_cases is not None else self.sizes.get('max_cases')
        self.seed = settings.seed
        self.engine = RewriteEngine.from_config(settings)
        self.calculus = LabelledCalculus(self.engine)
        self.logger = logging.getLogger(__name__)
        self._sampled = False
        self.suites = {
            'composition': self.check_full_composition,
            'beta': self.check_beta_simulation,
            'strategy': self.check_strategy,
            'isn': self.check_isn,
            'psn': self.check_psn,
            'measures': self.check_measures,
            'uex-termination': self.check_uex_termination,
            'projections': self.check_projections,
            'ie': self.check_ie,
            'z': self.check_z_property,
            'confluence': self.check_confluence,
            'types': self.check_types,
            'revb': self.check_revb,
        }

    def _track(self, cases):
        self._sampled = self._sampled or cases.sampled
        return cases

    def _cases(self, items):
        return self._track(sample(items, self.max_cases, self.seed))

    def _terms(self, key, substitutions=True):
        return self._track(term_cases(self.sizes[key], self.max_cases, self.seed, substitutions))

    def run(self, name):
        """Ejecutar una suite sin propagar excepciones"""
        started = datetime.now()
        self._sampled = False
        self.logger.info(f"Suite {name}: inicio")
        try:
            result = self.suites[name]()
        except Exception as e:
            self.logger.error(f"Suite {name}: error interno {e}")
            result = {
                'status': 'ERROR',
                'message': f'Error interno: {str(e)}',
                'cases': 0,
                'failures': 0,
                'warnings': 0,
                'details': [traceback.format_exc()],
                'recommendations': [],
            }
        result['sampled'] = self._sampled
        if self._sampled and result['status'] in ('PASS', 'WARNING'):
            result['status'] = 'WARNING'
            result['warnings'] += 1
            result['recommendations'].append(
                f'Casos muestreados (max_cases={self.max_cases}): ejecutar sin --sample para el recorrido exhaustivo'
            )
        result['seconds'] = round((datetime.now() - started).total_seconds(), 2)
        self.logger.info(f"Suite {name}: {result['status']} ({result['seconds']} s)")
        return result

    # =================== REESCRITURA ===================

    def check_full_composition(self):
        pairs = self._track(pair_cases(self.sizes['composition_size'], self.max_cases, self.seed))
        pairs += self._track(
            pair_cases(self.sizes['composition_es_size'], self.max_cases, self.seed, substitutions=True)
        )
        failures = []
        for t, u in pairs:
            trace = full_composition_trace(t, 'x', u)
            ok, message = check_trace(trace, EX, self.settings.class_bound)
            if ok and not self.engine.equivalent(trace.final, subst(t, 'x', u), EqMode.E):
                ok, message = False, 'la traza no termina en t{x:=u}'
            if not ok:
                failures.append(f"{print_term(ESub(t, 'x', u))}: {message}")
        return _result(
            len(failures), len(pairs),
            f"Composición completa verificada en {len(pairs) - len(failures)}/{len(pairs)} pares",
            failures,
        )

    def check_beta_simulation(self):
        terms = self._terms('beta_size', substitutions=False)
        cases = 0
        failures = []
        for t in terms:
            for step in beta_step(t):
                cases += 1
                trace = simulate_beta(t, step.after)
                ok, message = check_trace(trace, LAMBDA_EX, self.settings.class_bound)
                if ok and not self.engine.equivalent(trace.final, step.after, EqMode.E):
                    ok, message = False, 'la traza no alcanza el reducto β'
                if not ok:
                    failures.append(f"{print_term(t)}: {message}")
        return _result(len(failures), cases, f"{cases} pasos β simulados en λex", failures)

    # =================== NORMALIZACIÓN FUERTE ===================

    def check_strategy(self):
        strategy = PerpetualStrategy(self.engine)
        terms = [t for t in self._terms('strategy_size') if not is_normal_form(t)]
        failures = []
        unknown = 0
        for t in terms:
            first = strategy.step(t)
            if not isinstance(first, StrategyStep):
                unknown += 1
                continue
            again = strategy.step(t)
            if first.chain != again.chain or not alpha_eq(first.result, again.result):
                failures.append(f"{print_term(t)}: la estrategia no es determinista")
                continue
            trace = Trace(root=t, steps=list(first.steps))
            ok, message = check_trace(trace, LAMBDA_EX, self.settings.class_bound)
            if not first.steps:
                ok, message = False, 'expansión vacía'
            elif ok and not self.engine.equivalent(trace.final, first.result, EqMode.E):
                ok, message = False, 'la expansión no alcanza el resultado'
            if not ok:
                failures.append(f"{print_term(t)} ({first.rule.value}): {message}")
        recommendations = ['Aumentar node_fuel para decidir más cuerpos'] if unknown else []
        return _result(
            len(failures), len(terms), f"{len(terms) - unknown} pasos perpetuos expandidos y verificados",
            failures, recommendations, warnings=unknown,
        )

    def check_isn(self):
        checker = IsnChecker(self.engine, self.settings.depth_fuel)
        cases = 0
        skipped = 0
        failures = []
        for t in self._terms('isn_size'):
            verdict = self.engine.sn_verdict(t, LAMBDA_EX)
            if verdict.verdict is SnStatus.UNKNOWN:
                skipped += 1
                continue
            cases += 1
            derived = checker.derive(t) is not None
            if derived != verdict.proved_sn:
                failures.append(f"{print_term(t)}: ISN={derived}, oráculo={verdict.verdict.value}")
        return _result(len(failures), cases, f"ISN coincide con el oráculo en {cases - len(failures)} términos",
                       failures, warnings=skipped)

    def check_psn(self):
        rng = random.Random(self.seed)
        violations = []
        unknown = 0
        samples = self.sizes['psn_samples']
        for _ in range(samples):
            t = random_term(rng, rng.randint(1, self.sizes['psn_size']))
            report = psn_sample(self.engine, t)
            if report['violation']:
                violations.append(print_term(t))
            elif SnStatus.UNKNOWN in (report['beta'].verdict, report['lex'].verdict):
                unknown += 1
        return _result(len(violations), samples, f"{samples} λ-términos muestreados sin violar PSN",
                       violations, warnings=unknown)

    def check_ie(self):
        rng = random.Random(self.seed)
        wanted = self.sizes['ie_samples']
        applicable = 0
        attempts = 0
        violations = []
        while applicable < wanted and attempts < wanted * 20:
            attempts += 1
            t = random_term(rng, rng.randint(1, 5), substitutions=True)
            u = random_term(rng, rng.randint(1, 4))
            args = tuple(random_term(rng, rng.randint(1, 3)) for _ in range(rng.randint(0, 2)))
            report = ie_sample(self.engine, t, 'x', u, args)
            if not report['applies']:
                continue
            applicable += 1
            if not report['explicit'].proved_sn:
                violations.append(f"{print_term(t)} [x/{print_term(u)}] ({report['explicit'].verdict.value})")
        return _result(
            len(violations), applicable, f"{applicable} instancias IE aplicables tras {attempts} intentos",
            violations, warnings=int(applicable < wanted),
        )

    # =================== CÁLCULO ETIQUETADO ===================

    def _labelled(self):
        limit = max(1, self.max_cases // 8) if self.max_cases else 0
        base = self._track(term_cases(self.sizes['labelled_size'], limit, self.seed, substitutions=False))
        return self._cases(labelled_instances(self.calculus, base))

    def check_measures(self):
        failures = []
        v = parse_term('w[w/(x x)[y/x]]')
        s = parse_term('w[w/(x x)[y/x]][y/w[w/(x x)[y/x]]][[x/x1]]')
        if ar(v, 'x') != 2:
            failures.append(f"ar_x(v) = {ar(v, 'x')}, se esperaba 2")
        if dep(s) != 5:
            failures.append(f"dep(s) = {dep(s)}, se esperaba 5")
        instances = self._labelled()
        for t in instances:
            for rule, _ in self.calculus.measure_violations(t):
                failures.append(f"{print_term(t)}: {rule}")
        return _result(len(failures), len(instances) + 2,
                       f"Lemas de medida comprobados en {len(instances)} términos etiquetados", failures)

    def check_uex_termination(self):
        failures = []
        instances = self._labelled()
        for t in instances:
            graph = self.engine.explore(t, UEX)
            if graph.status != COMPLETE or graph.cyclic:
                failures.append(f"{print_term(t)}: {graph.status}, cíclico={graph.cyclic}")
        return _result(len(failures), len(instances), f"u̲ex termina sobre {len(instances)} términos", failures)

    def check_projections(self):
        failures = []
        undecided = 0
        cases = 0
        for t in self._labelled():
            graph = self.calculus.internal_graph(t)
            if graph.status != COMPLETE or graph.cyclic:
                failures.append(f"{print_term(t)}: la reducción interna no termina")
            for step in self.engine.reducts(t, LAMBDA_UEX):
                cases += 1
                report = self.calculus.check_projection(step)
                if report.holds:
                    continue
                if report.status == 'fuel':
                    undecided += 1
                else:
                    failures.append(f"{print_term(step.before)} ({step.rule.value}, {report.kind.value})")
            for step in self.engine.reducts(unlabel(t), LAMBDA_EX):
                cases += 1
                try:
                    self.calculus.lift_step(t, step)
                except NotLiftable:
                    failures.append(f"{print_term(t)}: paso {step.rule.value} sin levantamiento")
        return _result(len(failures), cases, f"{cases} proyecciones y levantamientos comprobados",
                       failures, warnings=undecided)

    # =================== CONFLUENCIA ===================

    def check_z_property(self):
        failures = []
        undecided = 0
        cases = 0
        for t in self._track(metaterm_cases(self.sizes['z_size'], self.max_cases, self.seed)):
            for report in z_check(self.engine, t, self.settings.z_fuel):
                cases += 1
                if report.status is ZStatus.FUEL_EXHAUSTED:
                    undecided += 1
                elif report.status is ZStatus.FAILED:
                    failures.append(f"{print_term(t)} ({report.step.rule.value}): tramo {report.failed_leg}")
                else:
                    for leg in (report.leg1, report.leg2):
                        ok, message = check_trace(leg, LAMBDA_EX, self.settings.class_bound)
                        if not ok:
                            failures.append(f"{print_term(t)}: {message}")
        return _result(len(failures), cases, f"Propiedad Z en {cases} reductos", failures, warnings=undecided)

    def check_confluence(self):
        failures = []
        undecided = 0
        terms = self._track(metaterm_cases(self.sizes['confluence_size'], self.max_cases, self.seed))
        for t in terms:
            report = confluence_check(self.engine, t, self.settings.confluence_depth, self.settings.join_depth)
            if report.status is ConfluenceStatus.COUNTEREXAMPLE:
                failures.append(f"{print_term(t)}: {' / '.join(print_term(p) for p in report.peak)}")
            elif report.status is ConfluenceStatus.FUEL_EXHAUSTED:
                undecided += 1
        demo = lambda_x_nonconfluence_demo(self.engine)
        if demo.status is not ConfluenceStatus.COUNTEREXAMPLE:
            failures.append(f"λx: el pico clásico no es un contraejemplo ({demo.status.value})")
        joined = confluence_check(self.engine, nonconfluence_peak(), 4, self.settings.join_depth, LAMBDA_EX)
        if joined.status is not ConfluenceStatus.CONFLUENT:
            failures.append(f"λex: el pico clásico no cierra ({joined.status.value})")
        # una de las ramas necesita nueve pasos para cerrar
        ground = confluence_check(
            self.engine, parse_term('((\\x.x y) y)[y/z]'), 3, max(12, self.settings.join_depth), LAMBDA_X,
        )
        if ground.status is not ConfluenceStatus.CONFLUENT:
            failures.append(f"λx: el pico sin metavariables no cierra ({ground.status.value})")
        return _result(len(failures), len(terms) + 3, f"Confluencia comprobada en {len(terms)} metatérminos",
                       failures, warnings=undecided)

    # =================== TIPOS ===================

    def _subtype_pairs(self, rng):
        small = enumerate_types(1)
        pairs = [(a, b) for a in small for b in small]
        for _ in range(len(pairs)):
            a = random_type(rng, self.sizes['type_depth'])
            parts = list(flatten(a))
            chosen = rng.sample(parts, rng.randint(1, len(parts)))
            b = intersect(chosen) if rng.random() < 0.7 else random_type(rng, self.sizes['type_depth'])
            pairs.append((a, b))
        return pairs

    def check_types(self):
        rng = random.Random(self.seed)
        failures = []
        warnings = 0
        pairs = self._subtype_pairs(rng)
        for a, b in pairs:
            if subtype(a, b) != derive_subtype(a, b):
                failures.append(f"≪ discrepa en {a} / {b}")
        for a, b in pairs[:200]:
            if not subtype(a, a):
                failures.append(f"≪ no es reflexiva en {a}")
            for _, c in pairs[:50]:
                if subtype(a, b) and subtype(b, c) and not subtype(a, c):
                    failures.append(f"≪ no es transitiva en {a}, {b}, {c}")

        terms = self._terms('typing_size')
        for t in terms:
            typable = is_simply_typable(t)
            if typable != is_simply_typable(revb(t)):
                failures.append(f"{print_term(t)}: revb cambia la tipabilidad")
            if typable:
                verdict = self.engine.sn_verdict(t, LAMBDA_EX)
                if verdict.verdict is SnStatus.PROVED_NOT_SN:
                    failures.append(f"{print_term(t)}: tipable pero no SN")
                elif verdict.verdict is SnStatus.UNKNOWN:
                    warnings += 1

        for env_text, term_text, type_text in GOLDEN_JUDGMENTS:
            env = {name: parse_type(text) for name, text in env_text.items()}
            term = parse_term(term_text)
            result = check_judgment_upto_subtype(env, term, parse_type(type_text))
            if not result.derivable:
                failures.append(f"{term_text} : {type_text} no derivable")
                continue
            ok, diagnostics = check_derivation(result.derivation)
            if not ok:
                failures.append(f"{term_text}: {diagnostics[0]}")
            if not self.engine.sn_verdict(term, LAMBDA_EX).proved_sn:
                failures.append(f"{term_text}: tipable pero sin SN probado")

        for text in ('(\\x.x x)(\\x.x x)', '(\\x.x x x)(\\x.x x x)'):
            for target in (Atom('A'), Arrow(Atom('A'), Atom('A')), Inter(Atom('A'), Atom('B'))):
                if check_judgment_upto_subtype({}, parse_term(text), target).derivable:
                    warnings += 1
                    self.logger.warning(f"{text} recibió tipo {target}")

        return _result(len(failures), len(pairs) + len(terms) + len(GOLDEN_JUDGMENTS),
                       f"Tipos: {len(pairs)} pares de subtipado, {len(terms)} términos, "
                       f"{len(GOLDEN_JUDGMENTS)} derivaciones ∩", failures, warnings=warnings)

    def check_revb(self):
        failures = []
        terms = self._terms('revb_size')
        for t in terms:
            trace = revb_trace(t)
            if any(rule is not Rule.B for rule in trace.rules):
                failures.append(f"{print_term(t)}: pasos que no son B")
            ok, message = check_trace(trace, LAMBDA_EX, self.settings.class_bound)
            if not ok or not alpha_eq(trace.final, t):
                failures.append(f"{print_term(t)}: {message}")
            if isinstance(t, ESub) and not trace.steps:
                failures.append(f"{print_term(t)}: revb(t) ->+ t sin pasos")
        small = [t for t in terms if size(t) <= max(1, self.sizes['revb_size'] // 2)]
        pairs = self._cases((t, u) for t in small for u in small)
        for t, u in pairs:
            if not alpha_eq(subst(revb(t), 'x', revb(u)), revb(subst(t, 'x', u))):
                failures.append(f"revb no compone con {{x:={print_term(u)}}} en {print_term(t)}")
        return _result(len(failures), len(terms) + len(pairs),
                       f"revb verificado en {len(terms)} términos y {len(pairs)} pares", failures)


SUITE_NAMES = (
    'composition', 'beta', 'strategy', 'isn', 'psn', 'measures', 'uex-termination',
    'projections', 'ie', 'z', 'confluence', 'types', 'revb',
)


def _run_one(name, settings, sizes):
    return name, AcceptanceSuites(settings, sizes).run(name)


def run_suites(names, settings, sizes, jobs=None):
    """Ejecutar suites (en paralelo si hay más de una) y fusionar por nombre"""
    unknown = [n for n in names if n not in SUITE_NAMES]
    if unknown:
        raise LexkitError(f"Suites desconocidas: {', '.join(unknown)}")
    workers = jobs or psutil.cpu_count(logical=True) or 1
    if len(names) == 1 or workers == 1:
        suites = AcceptanceSuites(settings, sizes)
        results = {name: suites.run(name) for name in names}
    else:
        with ProcessPoolExecutor(max_workers=min(workers, len(names))) as pool:
            futures = [pool.submit(_run_one, name, settings, sizes) for name in names]
            results = dict(f.result() for f in futures)
    return {name: results[name] for name in sorted(results, key=SUITE_NAMES.index)}


def overall_status(results):
    """HEALTHY sin fallos ni advertencias, WARNING sólo con advertencias, CRITICAL con fallos"""
    statuses = [r['status'] for r in results.values()]
    if any(s in ('FAIL', 'ERROR') for s in statuses):
        return 'CRITICAL'
    if 'WARNING' in statuses:
        return 'WARNING'
    return 'HEALTHY'
