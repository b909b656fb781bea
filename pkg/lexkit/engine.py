#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
LexKit - Banco de trabajo para el cálculo λex
Motor de Reescritura

Funcionalidades:
- Reductos en un paso módulo la teoría ecuacional del conjunto de reglas
- Exploración en anchura del grafo de reducción sobre claves canónicas
- Oráculo de normalización fuerte (ciclos, η, tamaño máximo)
- Normalización con estrategia más a la izquierda o perpetua
- Búsqueda acotada de caminos entre términos (→* y →+)
"""

import logging
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from lexkit.errors import FuelExhausted, IllFormedInput
from lexkit.rules import LAMBDA_EX, Step, Trace, apply_rule, check_well_formed
from lexkit.terms import EqMode, alpha_key, e_class, k_term, positions, replace_at, subterm_at


class SnStatus(str, Enum):
    PROVED_SN = 'ProvedSN'
    PROVED_NOT_SN = 'ProvedNotSN'
    UNKNOWN = 'Unknown'


class Policy(str, Enum):
    LEFTMOST = 'leftmost'
    PERPETUAL = 'perpetual'


COMPLETE = 'Complete'
FUEL_EXHAUSTED = 'FuelExhausted'


@dataclass(frozen=True)
class SnVerdict:
    verdict: SnStatus
    eta: Optional[int] = None
    max_size: Optional[int] = None
    witness: tuple = ()
    nodes: int = 0

    @property
    def proved_sn(self):
        return self.verdict is SnStatus.PROVED_SN


@dataclass
class ReductionGraph:
    root: str
    nodes: dict
    edges: dict
    status: str
    cyclic: bool
    cycle: tuple = ()
    transitions: dict = field(default_factory=dict)


@dataclass(frozen=True)
class PathResult:
    """Resultado de find_path: found, unreachable (búsqueda agotada) o fuel"""
    status: str
    trace: Optional[Trace] = None

    @property
    def found(self):
        return self.status == 'found'


def find_cycle(root, edges):
    """Ciclo alcanzable desde root (tupla de claves que empieza y termina igual) o ()"""
    color = {root: 'gray'}
    path = [root]
    stack = [iter(sorted(edges.get(root, ())))]
    while stack:
        advanced = False
        for _, target in stack[-1]:
            state = color.get(target)
            if state == 'gray':
                start = path.index(target)
                return tuple(path[start:]) + (target,)
            if state is None:
                color[target] = 'gray'
                path.append(target)
                stack.append(iter(sorted(edges.get(target, ()))))
                advanced = True
                break
        if not advanced:
            color[path.pop()] = 'black'
            stack.pop()
    return ()


def longest_path(root, edges):
    """Longitud del camino más largo desde root en un grafo acíclico"""
    depth = {}
    stack = [(root, False)]
    while stack:
        node, expanded = stack.pop()
        if expanded:
            depth[node] = 1 + max((depth[k] for _, k in edges.get(node, ())), default=-1)
            continue
        if node in depth:
            continue
        stack.append((node, True))
        for _, target in edges.get(node, ()):
            if target not in depth:
                stack.append((target, False))
    return depth[root]


class RewriteEngine:
    """Motor con memoria de claves canónicas, reductos y veredictos"""

    def __init__(self, node_fuel=20000, class_bound=1024, step_fuel=100000):
        if min(node_fuel, class_bound, step_fuel) < 1:
            raise IllFormedInput("Los combustibles deben ser positivos")
        self.node_fuel = node_fuel
        self.class_bound = class_bound
        self.step_fuel = step_fuel
        self._keys = {}
        self._steps = {}
        self._verdicts = {}
        self.logger = logging.getLogger(__name__)

    @classmethod
    def from_config(cls, config):
        return cls(node_fuel=config.node_fuel, class_bound=config.class_bound, step_fuel=config.step_fuel)

    # =================== CLAVES ===================

    def key(self, t, mode):
        """Clave canónica con memoria: todos los miembros de una clase comparten entrada"""
        alpha = alpha_key(t)
        if mode is EqMode.ALPHA:
            return alpha
        cached = self._keys.get((mode, alpha))
        if cached is not None:
            return cached
        members = e_class(t, mode, self.class_bound)
        key = min(members)
        for member in members:
            self._keys[(mode, member)] = key
        return key

    def equivalent(self, t, u, mode):
        return self.key(t, mode) == self.key(u, mode)

    # =================== REDUCTOS ===================

    def scan(self, t, rs):
        """Pasos sobre este representante (sin recorrer la clase)"""
        steps = []
        for pos in positions(t):
            node = subterm_at(t, pos)
            for rule in rs.rules:
                result = apply_rule(node, rule)
                if result is not None:
                    steps.append(Step(rule, pos, t, replace_at(t, pos, result)))
        return steps

    def reducts(self, t, rs):
        check_well_formed(t, rs)
        root = self.key(t, rs.eq_mode)
        cached = self._steps.get((rs.name, root))
        if cached is not None:
            return list(cached)
        found = {}
        members = e_class(t, rs.eq_mode, self.class_bound)
        for alpha in sorted(members):
            for step in self.scan(members[alpha], rs):
                found.setdefault((step.rule.value, self.key(step.after, rs.eq_mode)), step)
        ordered = tuple(found[k] for k in sorted(found, key=lambda k: (k[1], k[0])))
        self._steps[(rs.name, root)] = ordered
        return list(ordered)

    def successors(self, t, rs):
        return {self.key(step.after, rs.eq_mode) for step in self.reducts(t, rs)}

    # =================== GRAFO ===================

    def explore(self, t, rs, node_fuel=None, step_filter=None):
        fuel = node_fuel or self.node_fuel
        check_well_formed(t, rs)
        root = self.key(t, rs.eq_mode)
        nodes = {root: t}
        edges = {}
        transitions = {}
        queue = deque([root])
        status = COMPLETE
        while queue:
            if len(edges) >= fuel:
                status = FUEL_EXHAUSTED
                break
            current = queue.popleft()
            steps = self.reducts(nodes[current], rs)
            if step_filter is not None:
                steps = [s for s in steps if step_filter(s)]
            out = set()
            for step in steps:
                target = self.key(step.after, rs.eq_mode)
                out.add((step.rule.value, target))
                if target not in nodes:
                    nodes[target] = step.after
                    queue.append(target)
            edges[current] = frozenset(out)
            transitions[current] = tuple(steps)
        cycle = find_cycle(root, edges)
        if status == FUEL_EXHAUSTED:
            self.logger.debug(f"Exploración {rs.name} agotada tras {len(edges)} nodos")
        return ReductionGraph(root, nodes, edges, status, bool(cycle), cycle, transitions)

    def sn_verdict(self, t, rs=LAMBDA_EX, node_fuel=None):
        fuel = node_fuel or self.node_fuel
        try:
            memo = (rs.name, self.key(t, rs.eq_mode), fuel)
        except FuelExhausted as exc:
            self.logger.info(f"Oráculo indeciso: {exc}")
            return SnVerdict(SnStatus.UNKNOWN)
        if memo in self._verdicts:
            return self._verdicts[memo]
        try:
            graph = self.explore(t, rs, fuel)
        except FuelExhausted as exc:
            self.logger.info(f"Oráculo indeciso: {exc}")
            verdict = SnVerdict(SnStatus.UNKNOWN)
        else:
            if graph.cyclic:
                witness = tuple(graph.nodes[k] for k in graph.cycle)
                verdict = SnVerdict(SnStatus.PROVED_NOT_SN, witness=witness, nodes=len(graph.nodes))
            elif graph.status == COMPLETE:
                verdict = SnVerdict(
                    SnStatus.PROVED_SN,
                    eta=longest_path(graph.root, graph.edges),
                    max_size=max(k_term(n) for n in graph.nodes.values()),
                    nodes=len(graph.nodes),
                )
            else:
                verdict = SnVerdict(SnStatus.UNKNOWN, nodes=len(graph.nodes))
        self._verdicts[memo] = verdict
        return verdict

    # =================== NORMALIZACIÓN ===================

    def normalize(self, t, rs=LAMBDA_EX, step_fuel=None, policy=Policy.LEFTMOST):
        fuel = step_fuel or self.step_fuel
        if policy is Policy.PERPETUAL:
            if rs is not LAMBDA_EX:
                raise IllFormedInput("La estrategia perpetua sólo está definida para LambdaEx")
            from lexkit.perpetual import PerpetualStrategy
            return PerpetualStrategy(self).normalize(t, fuel)
        check_well_formed(t, rs)
        trace = Trace(root=t)
        current = t
        while True:
            steps = self.scan(current, rs) or self.reducts(current, rs)
            if not steps:
                return current, trace
            if len(trace.steps) >= fuel:
                trace.status = 'fuel'
                raise FuelExhausted(f"Normalización sin terminar tras {fuel} pasos", partial=trace)
            step = min(steps, key=lambda s: (s.position, rs.rules.index(s.rule)))
            trace.steps.append(step)
            current = step.after

    # =================== CAMINOS ===================

    def find_path(self, source, target, rs=LAMBDA_EX, max_depth=64, min_steps=0, node_fuel=None):
        """Búsqueda en anchura acotada de source a target (término o clave)"""
        fuel = node_fuel or self.node_fuel
        mode = rs.eq_mode
        goal = target if isinstance(target, str) else self.key(target, mode)
        start = self.key(source, mode)
        if min_steps == 0 and start == goal:
            return PathResult('found', Trace(root=source))
        parents = {}
        seen = {start} if min_steps == 0 else set()
        frontier = [(start, source)]
        depth = 0
        try:
            while frontier:
                if depth >= max_depth or len(seen) >= fuel:
                    return PathResult('fuel')
                depth += 1
                following = []
                for key, term in frontier:
                    for step in self.reducts(term, rs):
                        reached = self.key(step.after, mode)
                        if reached in seen:
                            continue
                        seen.add(reached)
                        parents[reached] = (key, step)
                        if reached == goal:
                            return PathResult('found', self._rebuild(source, start, goal, parents))
                        following.append((reached, step.after))
                frontier = following
        except FuelExhausted:
            return PathResult('fuel')
        return PathResult('unreachable')

    @staticmethod
    def _rebuild(source, start, goal, parents):
        steps = []
        current = goal
        while True:
            previous, step = parents[current]
            steps.append(step)
            current = previous
            if current == start:
                break
        return Trace(root=source, steps=list(reversed(steps)))


# =================== ATAJOS ===================

def reducts(t, rs=LAMBDA_EX):
    return RewriteEngine().reducts(t, rs)


def explore(t, rs=LAMBDA_EX, node_fuel=20000):
    return RewriteEngine(node_fuel=node_fuel).explore(t, rs)


def sn_verdict(t, rs=LAMBDA_EX, node_fuel=20000):
    return RewriteEngine(node_fuel=node_fuel).sn_verdict(t, rs)


def normalize(t, rs=LAMBDA_EX, step_fuel=100000, policy=Policy.LEFTMOST):
    return RewriteEngine(step_fuel=step_fuel).normalize(t, rs, policy=policy)
