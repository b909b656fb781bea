#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
LexKit - Banco de trabajo para el cálculo λex
Núcleo de Términos

Funcionalidades:
- Representación inmutable de términos, metatérminos y términos etiquetados
- Variables libres y ligadas, nombres frescos deterministas
- α-equivalencia mediante una codificación sin nombres
- Meta-sustitución sin captura (con la cláusula de metavariables)
- Clases de equivalencia módulo C y C̲ y claves canónicas
"""

import re
from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import Union

from lexkit.errors import FuelExhausted, IllFormedInput


# =================== NODOS ===================

@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class App:
    fun: "GenTerm"
    arg: "GenTerm"


@dataclass(frozen=True)
class Lam:
    binder: str
    body: "GenTerm"


@dataclass(frozen=True)
class ESub:
    """Sustitución explícita t[x/u]"""
    body: "GenTerm"
    binder: str
    arg: "GenTerm"


@dataclass(frozen=True)
class LSub:
    """Sustitución etiquetada t[[x/u]]"""
    body: "GenTerm"
    binder: str
    arg: "GenTerm"


@dataclass(frozen=True)
class MetaVar:
    """Metavariable decorada X_Δ; Δ se trata como conjunto"""
    name: str
    decoration: frozenset = frozenset()

    def __post_init__(self):
        if not isinstance(self.decoration, frozenset):
            object.__setattr__(self, 'decoration', frozenset(self.decoration))


GenTerm = Union[Var, App, Lam, ESub, LSub, MetaVar]

SUBSTITUTIONS = (ESub, LSub)
BINDERS = (Lam, ESub, LSub)


class EqMode(str, Enum):
    ALPHA = 'Alpha'
    E = 'E'
    EU = 'EU'


# =================== ESTRUCTURA ===================

def children(t):
    if isinstance(t, App):
        return (t.fun, t.arg)
    if isinstance(t, Lam):
        return (t.body,)
    if isinstance(t, SUBSTITUTIONS):
        return (t.body, t.arg)
    return ()


def with_children(t, kids):
    """Reconstruir el nodo t con nuevos hijos"""
    if isinstance(t, App):
        return App(kids[0], kids[1])
    if isinstance(t, Lam):
        return Lam(t.binder, kids[0])
    if isinstance(t, SUBSTITUTIONS):
        return type(t)(kids[0], t.binder, kids[1])
    return t


def size(t):
    return 1 + sum(size(c) for c in children(t))


def positions(t):
    """Posiciones en preorden (camino de índices de hijos desde la raíz)"""
    result = []
    stack = [((), t)]
    while stack:
        pos, s = stack.pop()
        result.append(pos)
        kids = children(s)
        for i in range(len(kids) - 1, -1, -1):
            stack.append((pos + (i,), kids[i]))
    return result


def subterm_at(t, position):
    for index in position:
        t = children(t)[index]
    return t


def replace_at(t, position, new):
    if not position:
        return new
    kids = list(children(t))
    head, rest = position[0], position[1:]
    kids[head] = replace_at(kids[head], rest, new)
    return with_children(t, kids)


def spine(t):
    """Descomponer t = h t1 ... tn con h que no es aplicación"""
    args = []
    while isinstance(t, App):
        args.append(t.arg)
        t = t.fun
    return t, tuple(reversed(args))


def rebuild(head, args):
    for arg in args:
        head = App(head, arg)
    return head


# =================== VARIABLES ===================

def free_vars(t):
    if isinstance(t, Var):
        return frozenset((t.name,))
    if isinstance(t, MetaVar):
        return t.decoration
    if isinstance(t, App):
        return free_vars(t.fun) | free_vars(t.arg)
    if isinstance(t, Lam):
        return free_vars(t.body) - {t.binder}
    return (free_vars(t.body) - {t.binder}) | free_vars(t.arg)


def bound_vars(t):
    if isinstance(t, (Var, MetaVar)):
        return frozenset()
    if isinstance(t, App):
        return bound_vars(t.fun) | bound_vars(t.arg)
    if isinstance(t, Lam):
        return bound_vars(t.body) | {t.binder}
    return bound_vars(t.body) | bound_vars(t.arg) | {t.binder}


def all_names(t):
    """Todos los identificadores de variable que aparecen en t"""
    names = set()
    stack = [t]
    while stack:
        s = stack.pop()
        if isinstance(s, Var):
            names.add(s.name)
        elif isinstance(s, MetaVar):
            names.update(s.decoration)
        else:
            if isinstance(s, BINDERS):
                names.add(s.binder)
            stack.extend(children(s))
    return frozenset(names)


_SUFFIX = re.compile(r"[0-9']+$")


def fresh_name(base, avoid):
    """Primer nombre base1, base2, ... que no está en avoid"""
    stem = _SUFFIX.sub('', base) or base
    counter = 1
    while f"{stem}{counter}" in avoid:
        counter += 1
    return f"{stem}{counter}"


def rename_free(t, old, new):
    """α-renombrar ocurrencias libres de old (incluidas decoraciones); new debe ser fresco"""
    if isinstance(t, Var):
        return Var(new) if t.name == old else t
    if isinstance(t, MetaVar):
        if old in t.decoration:
            return MetaVar(t.name, (t.decoration - {old}) | {new})
        return t
    if isinstance(t, App):
        return App(rename_free(t.fun, old, new), rename_free(t.arg, old, new))
    if isinstance(t, Lam):
        if t.binder == old:
            return t
        return Lam(t.binder, rename_free(t.body, old, new))
    arg = rename_free(t.arg, old, new)
    body = t.body if t.binder == old else rename_free(t.body, old, new)
    return type(t)(body, t.binder, arg)


def rename_binders(t, should_rename, used):
    """Renombrar con nombres frescos los ligadores que cumplen should_rename"""
    if isinstance(t, (Var, MetaVar)):
        return t
    if isinstance(t, App):
        return App(rename_binders(t.fun, should_rename, used), rename_binders(t.arg, should_rename, used))
    binder, body = t.binder, t.body
    if should_rename(binder):
        new = fresh_name(binder, used)
        used.add(new)
        body = rename_free(body, binder, new)
        binder = new
    body = rename_binders(body, should_rename, used)
    if isinstance(t, Lam):
        return Lam(binder, body)
    return type(t)(body, binder, rename_binders(t.arg, should_rename, used))


def barendregt(t, avoid=()):
    """Convención de Barendregt: todos los ligadores distintos entre sí y de las variables libres"""
    return rename_binders(t, lambda _: True, set(all_names(t)) | set(avoid))


# =================== PREDICADOS ===================

def _contains(t, kinds):
    stack = [t]
    while stack:
        s = stack.pop()
        if isinstance(s, kinds):
            return True
        stack.extend(children(s))
    return False


def has_metavars(t):
    return _contains(t, MetaVar)


def is_term(t):
    return not _contains(t, (LSub, MetaVar))


def is_metaterm(t):
    return not _contains(t, LSub)


def is_lambda_term(t):
    return not _contains(t, (ESub, LSub, MetaVar))


def is_label_free(t):
    return not _contains(t, LSub)


def label_bodies(t):
    """Cuerpos de las sustituciones etiquetadas, en preorden"""
    bodies = []
    for pos in positions(t):
        s = subterm_at(t, pos)
        if isinstance(s, LSub):
            bodies.append(s.arg)
    return bodies


def has_labelled_shape(t, context):
    """Parte sintáctica de is_labelled: la certificación SN vive en labelled.py"""
    if _contains(t, MetaVar):
        return False
    for s in (subterm_at(t, p) for p in positions(t)):
        if isinstance(s, BINDERS) and s.binder in context:
            return False
        if isinstance(s, LSub) and (not is_term(s.arg) or not free_vars(s.arg) <= context):
            return False
    return True


# =================== META-SUSTITUCIÓN ===================

def subst(t, x, v):
    """t{x:=v} sin captura; X_Δ{x:=v} = X_Δ[x/v] cuando x ∈ Δ"""
    if not is_label_free(v):
        raise IllFormedInput("La meta-sustitución no está definida sobre términos etiquetados")
    avoid = set(all_names(t)) | set(all_names(v)) | {x}
    return _subst(t, x, v, free_vars(v), avoid)


def _subst(t, x, v, fv_v, avoid):
    if isinstance(t, Var):
        return v if t.name == x else t
    if isinstance(t, MetaVar):
        return ESub(t, x, v) if x in t.decoration else t
    if isinstance(t, LSub):
        raise IllFormedInput("La meta-sustitución no está definida sobre términos etiquetados")
    if isinstance(t, App):
        return App(_subst(t.fun, x, v, fv_v, avoid), _subst(t.arg, x, v, fv_v, avoid))
    if x not in free_vars(t):
        return t
    if isinstance(t, Lam):
        binder, body = _apart(t.binder, t.body, x, fv_v, avoid)
        return Lam(binder, _subst(body, x, v, fv_v, avoid))
    arg = _subst(t.arg, x, v, fv_v, avoid)
    if t.binder == x:
        return ESub(t.body, x, arg)
    binder, body = _apart(t.binder, t.body, x, fv_v, avoid)
    return ESub(_subst(body, x, v, fv_v, avoid), binder, arg)


def _apart(binder, body, x, fv_v, avoid):
    if binder != x and binder not in fv_v:
        return binder, body
    new = fresh_name(binder, avoid)
    avoid.add(new)
    return new, rename_free(body, binder, new)


# =================== α Y CLASES ===================

def alpha_key(t):
    """Codificación sin nombres: ligadores por índice de anidamiento"""
    out = []
    _encode(t, [], out)
    return ' '.join(out)


def _reference(name, env):
    for depth in range(len(env) - 1, -1, -1):
        if env[depth] == name:
            return f"#{len(env) - 1 - depth}"
    return f"${name}"


def _encode(t, env, out):
    if isinstance(t, Var):
        out.append(_reference(t.name, env))
    elif isinstance(t, MetaVar):
        refs = ','.join(sorted(_reference(n, env) for n in t.decoration))
        out.append(f"?{t.name}{{{refs}}}")
    elif isinstance(t, App):
        out.append('@')
        _encode(t.fun, env, out)
        _encode(t.arg, env, out)
    elif isinstance(t, Lam):
        out.append('L')
        env.append(t.binder)
        _encode(t.body, env, out)
        env.pop()
    else:
        out.append('S' if isinstance(t, ESub) else 'U')
        env.append(t.binder)
        _encode(t.body, env, out)
        env.pop()
        _encode(t.arg, env, out)


def alpha_eq(t, u):
    return alpha_key(t) == alpha_key(u)


def swap_substitutions(node, mode):
    """Intercambio de sustituciones adyacentes licenciado por C (y C̲ en modo EU)"""
    if mode is EqMode.ALPHA:
        return None
    if not isinstance(node, SUBSTITUTIONS) or not isinstance(node.body, SUBSTITUTIONS):
        return None
    outer, inner = node, node.body
    if mode is EqMode.E and not (isinstance(outer, ESub) and isinstance(inner, ESub)):
        return None
    body, x, u = inner.body, inner.binder, inner.arg
    y, v = outer.binder, outer.arg
    if y in free_vars(u):
        return None
    if x == y or x in free_vars(v):
        new = fresh_name(x, all_names(outer))
        body = rename_free(body, x, new)
        x = new
    return type(inner)(type(outer)(body, y, v), x, u)


def neighbours(t, mode):
    for pos in positions(t):
        swapped = swap_substitutions(subterm_at(t, pos), mode)
        if swapped is not None:
            yield replace_at(t, pos, swapped)


def e_class(t, mode, bound=1024):
    """Clase de t módulo C (E) o C∪C̲ (EU), como mapa clave-α -> representante"""
    members = {alpha_key(t): t}
    if mode is EqMode.ALPHA:
        return members
    queue = deque([t])
    while queue:
        current = queue.popleft()
        for other in neighbours(current, mode):
            key = alpha_key(other)
            if key in members:
                continue
            members[key] = other
            if len(members) > bound:
                raise FuelExhausted(f"La clase de equivalencia supera el límite de {bound} miembros")
            queue.append(other)
    return members


def canonical_key(t, mode=EqMode.ALPHA, bound=1024):
    if mode is EqMode.ALPHA:
        return alpha_key(t)
    return min(e_class(t, mode, bound))


def k_term(t):
    """Medida k sobre términos; LSub cuenta como ESub"""
    if isinstance(t, (Var, MetaVar)):
        return 1
    if isinstance(t, App):
        return k_term(t.fun) + k_term(t.arg) + 1
    if isinstance(t, Lam):
        return k_term(t.body) + 1
    return k_term(t.body) * k_term(t.arg)
