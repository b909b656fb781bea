#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
LexKit - Banco de trabajo para el cálculo λex
Sintaxis Concreta (lectura y escritura)

Funcionalidades:
- Parser LALR (lark) para términos, metatérminos, términos etiquetados y tipos
- Impresión con paréntesis mínimos en ASCII
- Errores de sintaxis con rango en bytes y conjunto de tokens esperados
- Formato JSON de derivaciones de tipos y de trazas de reducción
"""

import logging
from dataclasses import dataclass
from functools import reduce

from lark import Lark, Transformer
from lark.exceptions import UnexpectedCharacters, UnexpectedInput, UnexpectedToken

from lexkit.errors import IllFormedInput, ParseError
from lexkit.intersection import Arrow, Atom, Inter, TypeDerivation, normalize_rule_name
from lexkit.terms import App, ESub, Lam, LSub, MetaVar, Var

logger = logging.getLogger(__name__)

GRAMMAR = r'''
?term: lam
     | app

lam: ("\\" | "λ") IDENT "." term

?app: suffixed+

suffixed: primary (esub | lsub)*

esub: "[" IDENT "/" term "]"
lsub: "[[" IDENT "/" term "]" "]"

?primary: IDENT                            -> var
        | "(" term ")"
        | "?" IDENT "{" [idents] "}"        -> metavar

idents: IDENT ("," IDENT)*

?type: inter
     | inter "->" type                     -> arrow

?inter: atomty
      | inter "&" atomty                   -> both

?atomty: IDENT                             -> tatom
       | "(" type ")"

IDENT: /[a-zA-Z][a-zA-Z0-9_']*/

%import common.WS
%ignore WS
'''


@dataclass(frozen=True)
class SourceSpan:
    start: int
    end: int


class _Builder(Transformer):
    """Construye GenTerm y Type directamente durante el análisis"""

    def var(self, items):
        return Var(str(items[0]))

    def idents(self, items):
        return [str(item) for item in items]

    def metavar(self, items):
        name, decoration = items
        return MetaVar(str(name), frozenset(decoration or ()))

    def esub(self, items):
        return (ESub, str(items[0]), items[1])

    def lsub(self, items):
        return (LSub, str(items[0]), items[1])

    def suffixed(self, items):
        term = items[0]
        for kind, binder, arg in items[1:]:
            term = kind(term, binder, arg)
        return term

    def app(self, items):
        return reduce(App, items)

    def lam(self, items):
        return Lam(str(items[0]), items[1])

    def tatom(self, items):
        return Atom(str(items[0]))

    def arrow(self, items):
        return Arrow(items[0], items[1])

    def both(self, items):
        return Inter(items[0], items[1])


_PARSER = Lark(GRAMMAR, parser='lalr', start=['term', 'type'], transformer=_Builder())


def _describe_terminal(name):
    if name == '$END':
        return 'fin de entrada'
    try:
        terminal = _PARSER.get_terminal(name)
    except KeyError:
        return name
    if terminal.pattern.type == 'str':
        return repr(terminal.pattern.value)
    return name


def _parse(src, start):
    try:
        return _PARSER.parse(src, start=start)
    except UnexpectedInput as exc:
        position = getattr(exc, 'pos_in_stream', None)
        if position is None or position < 0:
            position = len(src)
        begin = len(src[:position].encode('utf-8'))
        end = begin
        if isinstance(exc, UnexpectedToken) and exc.token.type != '$END':
            end = begin + len(str(exc.token).encode('utf-8'))
        elif isinstance(exc, UnexpectedCharacters):
            end = begin + len(src[position:position + 1].encode('utf-8'))
        expected = getattr(exc, 'expected', None) or getattr(exc, 'allowed', None) or ()
        logger.debug(f"Error de sintaxis en {begin}: {exc}")
        raise ParseError(
            f"Error de sintaxis en la posición {begin}",
            SourceSpan(begin, end),
            {_describe_terminal(name) for name in expected},
        ) from None


def parse_term(src):
    return _parse(src, 'term')


def parse_type(src):
    return _parse(src, 'type')


# =================== IMPRESIÓN ===================

def _suffixed(t):
    text = print_term(t)
    return f"({text})" if isinstance(t, (App, Lam)) else text


def print_term(t):
    if isinstance(t, Var):
        return t.name
    if isinstance(t, MetaVar):
        return f"?{t.name}{{{','.join(sorted(t.decoration))}}}"
    if isinstance(t, Lam):
        return f"\\{t.binder}.{print_term(t.body)}"
    if isinstance(t, App):
        fun = f"({print_term(t.fun)})" if isinstance(t.fun, Lam) else print_term(t.fun)
        return f"{fun} {_suffixed(t.arg)}"
    if isinstance(t, ESub):
        return f"{_suffixed(t.body)}[{t.binder}/{print_term(t.arg)}]"
    return f"{_suffixed(t.body)}[[{t.binder}/{print_term(t.arg)}]]"


def print_type(ty):
    if isinstance(ty, Atom):
        return ty.name
    if isinstance(ty, Arrow):
        domain = print_type(ty.domain)
        if isinstance(ty.domain, Arrow):
            domain = f"({domain})"
        return f"{domain}->{print_type(ty.codomain)}"
    left = print_type(ty.left)
    if isinstance(ty.left, Arrow):
        left = f"({left})"
    right = print_type(ty.right)
    if isinstance(ty.right, (Arrow, Inter)):
        right = f"({right})"
    return f"{left}&{right}"


# =================== JSON ===================

def load_derivation(data):
    """Leer una derivación desde el árbol JSON {rule, env, term, type, premises}"""
    try:
        env = tuple(sorted(
            ((str(name), parse_type(text)) for name, text in data.get('env', [])),
            key=lambda entry: entry[0],
        ))
        names = [name for name, _ in env]
        if len(names) != len(set(names)):
            raise IllFormedInput("El entorno liga dos veces el mismo identificador")
        return TypeDerivation(
            rule=normalize_rule_name(data['rule']),
            env=env,
            term=parse_term(data['term']),
            type=parse_type(data['type']),
            premises=tuple(load_derivation(p) for p in data.get('premises', [])),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise IllFormedInput(f"Derivación JSON mal formada: {exc}") from exc


def dump_derivation(derivation):
    return {
        'rule': derivation.rule,
        'env': [[name, print_type(ty)] for name, ty in derivation.env],
        'term': print_term(derivation.term),
        'type': print_type(derivation.type),
        'premises': [dump_derivation(p) for p in derivation.premises],
    }


def trace_to_json(trace):
    return {
        'root': print_term(trace.root),
        'steps': [
            {'rule': step.rule.value, 'position': list(step.position), 'to': print_term(step.after)}
            for step in trace.steps
        ],
        'status': trace.status,
    }
