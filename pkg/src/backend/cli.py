"""
Command-line interface for the domino tiling toolkit.

Usage:
    python src/backend/cli.py census
    python src/backend/cli.py synth 1101 --out t1101.json
    python src/backend/cli.py solve --catalogue T1 --width 2 --height 2 --count

Exit codes: 0 success (SAT for solve), 1 UNSAT or NONE, 2 TIMEOUT or usage
error, 3 rejected input.
"""
import json
import os
import re
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import click

from config import get_config
from models.domino import DominoPatch
from models.patch import Boundary, Region, SolveMode, SolveStatus
from models.symbol import format_symbol, parse_symbol
from services.block_service import RULE_LABELS, block_admissibility, closure, derive_atomics, enforced_rules
from services.io_service import (
    domino_patch_from_json, marked_patch_from_json, read_json, resolve_tileset, write_json
)
from services.render_service import RenderSpec, render_ascii, render_domino_svg, render_marked_svg
from services.solver_service import parity_result, solve as solve_region, torus_search
from services.substitution_service import SeededChooser, SequenceChooser, deflate as deflate_patch, expand as expand_symbol, flip_v
from services.symbol_service import (
    atoms as symbol_atoms, canonical_rep, census as symbol_census, classify as classify_symbol, det_components,
    equivalent, partner, prop2_classify, prop2_tally
)
from services.synthesis_service import (
    atomic_table, build_marked_supertile, pair_table, synthesize, theorem1_row, theorem1_sets, usage_check
)
from utils.errors import TilingError
from utils.logging_config import setup_cli_logging

EXIT_CODES = {
    SolveStatus.SAT: 0,
    SolveStatus.UNSAT: 1,
    SolveStatus.NONE: 1,
    SolveStatus.NONE_BY_PARITY: 1,
    SolveStatus.TIMEOUT: 2,
}


class RejectedInput(click.ClickException):
    exit_code = 3


class TilingGroup(click.Group):
    """Reports domain errors as one-line messages."""

    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except TilingError as exc:
            raise RejectedInput(exc.message) from exc


def emit(ctx, payload, text=None):
    if ctx.obj['format'] == 'json':
        click.echo(json.dumps(payload, indent=2, ensure_ascii=False))
    elif text is not None:
        click.echo(text)
    else:
        for key, value in payload.items():
            click.echo(f"{key}: {value}")


def _symbol(text):
    try:
        return parse_symbol(text)
    except TilingError as exc:
        raise click.BadParameter(exc.message) from exc


def _tileset(set_file, catalogue_name, symbol_text):
    given = [v for v in (set_file, catalogue_name, symbol_text) if v]
    if len(given) != 1:
        raise click.UsageError("give exactly one of --set, --catalogue or --symbol")
    if set_file:
        return resolve_tileset({'tileset': read_json(set_file)})
    if catalogue_name:
        return resolve_tileset({'catalogue': catalogue_name})
    return resolve_tileset({'symbol': symbol_text})


def tileset_options(command):
    command = click.option('--symbol', 'symbol_text', help="Synthesize T_S for a full symbol.")(command)
    command = click.option('--catalogue', 'catalogue_name', help="Named catalogue such as T1 or T_Pibar.")(command)
    command = click.option('--set', 'set_file', type=click.Path(exists=True, dir_okay=False),
                           help="Tile-set JSON file.")(command)
    return command


def _chooser(ctx, choices):
    if choices:
        return SequenceChooser([int(c) for c in choices.split(',') if c.strip()])
    seed = ctx.obj['seed']
    return SeededChooser(ctx.obj['config'].DEFAULT_SEED if seed is None else seed)


@click.group(cls=TilingGroup)
@click.option('--format', 'output_format', type=click.Choice(['json', 'text']), default='text', show_default=True)
@click.option('--seed', type=int, default=None, help="Seed for choices in non-deterministic symbols.")
@click.option('--env', default=None, help="Configuration name (development, production, testing).")
@click.option('--verbose', is_flag=True, help="Log service activity to stderr.")
@click.pass_context
def cli(ctx, output_format, seed, env, verbose):
    """Domino substitution tile sets: symbols, synthesis, supertiles and solving."""
    setup_cli_logging(verbose)
    ctx.ensure_object(dict)
    ctx.obj.update({'format': output_format, 'seed': seed, 'config': get_config(env)})


# --- symbols ---------------------------------------------------------------

@cli.command()
@click.pass_context
def census(ctx):
    """Count full symbols, self-paired symbols and classes."""
    payload = {**symbol_census(), 'families': prop2_tally()}
    lines = [f"{key}: {value}" for key, value in payload.items() if key != 'families']
    lines += [f"families.{key}: {value}" for key, value in payload['families'].items()]
    emit(ctx, payload, '\n'.join(lines))


@cli.command()
@click.argument('symbol')
@click.pass_context
def classify(ctx, symbol):
    """Classify a symbol."""
    parsed = _symbol(symbol)
    payload = {
        'symbol': format_symbol(parsed),
        'class': classify_symbol(parsed).value,
        'full': parsed.is_full,
        'deterministic': parsed.is_deterministic,
    }
    if parsed.is_full:
        payload['partner'] = format_symbol(partner(parsed))
        payload['canonical'] = format_symbol(canonical_rep(parsed))
        payload['family'] = prop2_classify(parsed).value
    emit(ctx, payload)


@cli.command()
@click.argument('symbol')
@click.pass_context
def atoms(ctx, symbol):
    """List the atoms and deterministic components of a symbol."""
    parsed = _symbol(symbol)
    payload = {'atoms': sorted(format_symbol(a) for a in symbol_atoms(parsed))}
    if parsed.is_full:
        payload['components'] = sorted(format_symbol(c) for c in det_components(parsed))
    emit(ctx, payload, '\n'.join(f"{key}: {' '.join(values)}" for key, values in payload.items()))


@cli.command()
@click.argument('first')
@click.argument('second')
@click.pass_context
def equiv(ctx, first, second):
    """Whether two symbols are equal or partners."""
    a, b = _symbol(first), _symbol(second)
    result = equivalent(a, b)
    emit(ctx, {'first': format_symbol(a), 'second': format_symbol(b), 'equivalent': result},
         'equivalent' if result else 'not equivalent')


# --- tile sets -------------------------------------------------------------

@cli.command()
@click.argument('symbol')
@click.option('--out', type=click.Path(dir_okay=False), help="Write the tile set JSON here.")
@click.pass_context
def synth(ctx, symbol, out):
    """Assemble T_S for a full symbol."""
    tiles = synthesize(_symbol(symbol))
    if out:
        write_json(out, tiles.to_dict())
    emit(ctx, tiles.to_dict(), f"{tiles.name}: {len(tiles)} tiles\n" + ' '.join(t.name for t in tiles.sorted_tiles()))


@cli.command('closure')
@click.option('--rules', required=True, help="Comma-separated rules: pi, par, xi, pibar.")
@click.pass_context
def closure_command(ctx, rules):
    """Close the tile tally of the T1 rules."""
    tiles = closure([r for r in rules.split(',') if r.strip()])
    emit(ctx, tiles.to_dict(), f"{tiles.name}: {len(tiles)} tiles\n" + ' '.join(t.name for t in tiles.sorted_tiles()))


@cli.command('derive-atomics')
@click.option('--out', type=click.Path(dir_okay=False), help="Write the derived tables here.")
@click.pass_context
def derive_atomics_command(ctx, out):
    """Derive the atomic and interface tables and check the fixtures against them."""
    atomic, pairs = derive_atomics()
    atomic_table()
    pair_table()
    payload = {
        'atomic': {format_symbol(alpha): tiles.names() for alpha, tiles in sorted(atomic.items(), key=lambda i: str(i[0]))},
        'pairs': {f"{format_symbol(beta)}->{format_symbol(alpha)}": tiles.names()
                  for (beta, alpha), tiles in sorted(pairs.items(), key=lambda i: (str(i[0][0]), str(i[0][1])))},
    }
    if out:
        write_json(out, payload)
    emit(ctx, payload, f"{len(atomic)} atomic sets and {len(pairs)} pair sets agree with the fixtures")


@cli.command()
@click.option('--row', default=None, help="Only this row, e.g. T_Pibar.")
@click.pass_context
def theorem1(ctx, row):
    """Rows of the T1 classification with the rules and blocks they allow."""
    rows = [theorem1_row(row)] if row else theorem1_sets()
    payload = {'rows': [r.to_dict() for r in rows]}
    lines = [f"{r.name:<18} {len(r.tiles):>3}  rules={''.join(RULE_LABELS[x] for x in r.rules) or '-'}  "
             f"blocks={''.join(r.blocks)}" for r in rows]
    emit(ctx, payload, '\n'.join(lines))


@cli.command()
@tileset_options
@click.pass_context
def admissible(ctx, set_file, catalogue_name, symbol_text):
    """Blocks admitted and rules enforced by a tile set."""
    tiles = _tileset(set_file, catalogue_name, symbol_text)
    payload = {
        'name': tiles.name,
        'size': len(tiles),
        'blocks': sorted(block_admissibility(tiles)),
        'rules': sorted(RULE_LABELS[r] for r in enforced_rules(tiles)),
    }
    emit(ctx, payload)


@cli.command('usage-check')
@click.argument('symbol')
@click.option('--level', type=int, default=3, show_default=True)
@click.pass_context
def usage_check_command(ctx, symbol, level):
    """Tiles of T_S unused by the marked supertile of the given level."""
    unused = sorted(usage_check(_symbol(symbol), level))
    emit(ctx, {'symbol': symbol, 'level': level, 'unused': unused},
         'all tiles used' if not unused else 'unused: ' + ' '.join(unused))


# --- substitution ----------------------------------------------------------

def _read_choices(path):
    with open(path, encoding='utf-8') as handle:
        text = handle.read()
    digits = re.findall(r'\S+', text.replace(',', ' '))
    if not digits or any(d not in {'0', '1', '2', '3'} for d in digits):
        raise click.BadParameter(f"{path} must list digits 0-3", param_hint='--choices')
    return SequenceChooser([int(d) for d in digits])


@cli.command()
@click.argument('symbol')
@click.option('--level', type=int, required=True, help="Number of substitutions.")
@click.option('--seed', 'local_seed', type=int, default=None, help="Seed for this expansion.")
@click.option('--choices', 'choices_file', type=click.Path(exists=True, dir_okay=False),
              help="File of digits taken in expansion order for non-deterministic slots.")
@click.option('--all', 'expand_all', is_flag=True, help="One supertile per deterministic component.")
@click.option('--out', type=click.Path(dir_okay=False), help="Write the patch JSON here.")
@click.pass_context
def expand(ctx, symbol, level, local_seed, choices_file, expand_all, out):
    """Level-n supertile of a horizontal domino."""
    if sum(1 for given in (local_seed is not None, choices_file, expand_all) if given) > 1:
        raise click.UsageError("give at most one of --seed, --choices or --all")
    parsed = _symbol(symbol)
    max_level = ctx.obj['config'].MAX_EXPAND_LEVEL
    if expand_all:
        patches = [(format_symbol(c), expand_symbol(c, level, max_level=max_level)) for c in sorted(det_components(parsed), key=format_symbol)]
        payload = {'supertiles': [{'symbol': name, **patch.to_dict()} for name, patch in patches]}
        if out:
            write_json(out, payload)
        emit(ctx, payload, '\n\n'.join(f"{name}\n{render_ascii(patch)}" for name, patch in patches))
        return
    if choices_file:
        chooser = _read_choices(choices_file)
    elif local_seed is not None:
        chooser = SeededChooser(local_seed)
    else:
        chooser = _chooser(ctx, None)
    patch = expand_symbol(parsed, level, chooser, max_level)
    if out:
        write_json(out, patch.to_dict())
    emit(ctx, patch.to_dict(), render_ascii(patch))


@cli.command()
@click.argument('symbol')
@click.argument('patch_file', type=click.Path(exists=True, dir_okay=False))
@click.pass_context
def deflate(ctx, symbol, patch_file):
    """Group a supertile into its parents under a deterministic symbol."""
    parent = deflate_patch(domino_patch_from_json(read_json(patch_file)), _symbol(symbol))
    if parent is None:
        emit(ctx, {'patch': None}, 'no decomposition')
        ctx.exit(1)
    emit(ctx, {'patch': parent.to_dict()}, render_ascii(parent))


@cli.command()
@click.argument('context')
@click.option('--level', type=int, default=1, show_default=True)
@click.option('--out', type=click.Path(dir_okay=False), help="Write the marked patch JSON here.")
@click.pass_context
def supertile(ctx, context, level, out):
    """Marked supertile of a T1 rule (pi, par, xi, pibar) or a symbol."""
    patch, tiles = build_marked_supertile(context, level, ctx.obj['config'].MAX_SUPERTILE_LEVEL)
    payload = {'tileset': tiles.name, **patch.to_dict()}
    if out:
        write_json(out, payload)
    emit(ctx, payload, render_ascii(patch))


@cli.command()
@click.option('--symbol', 'symbol_text', default=None, help="Render expand(SYMBOL, LEVEL).")
@click.option('--level', type=int, default=0, show_default=True)
@click.option('--patch', 'patch_file', type=click.Path(exists=True, dir_okay=False),
              help="Domino or marked patch JSON file.")
@click.option('--out', type=click.Path(dir_okay=False), required=True)
@click.option('--scale', type=int, default=20, show_default=True)
@click.option('--show-codes', is_flag=True)
@click.option('--flip', is_flag=True, help="Reflect the domino patch vertically before drawing.")
@click.option('--swap', type=click.IntRange(0, 3), default=0, help="Paint code c with the colour of c+k.")
@click.option('--choices', default=None)
@click.pass_context
def render(ctx, symbol_text, level, patch_file, out, scale, show_codes, flip, swap, choices):
    """Write an SVG of a supertile or a patch file."""
    if bool(symbol_text) == bool(patch_file):
        raise click.UsageError("give exactly one of --symbol or --patch")
    spec = RenderSpec(scale=scale, show_codes=show_codes).swapped(swap)
    if symbol_text:
        patch = expand_symbol(_symbol(symbol_text), level, _chooser(ctx, choices), ctx.obj['config'].MAX_EXPAND_LEVEL)
    else:
        document = read_json(patch_file)
        patch = domino_patch_from_json(document) if 'dominoes' in document else marked_patch_from_json(document)
    if isinstance(patch, DominoPatch):
        svg = render_domino_svg(flip_v(patch) if flip else patch, spec)
    else:
        svg = render_marked_svg(patch, spec)
    with open(out, 'w', encoding='utf-8') as handle:
        handle.write(svg)
    emit(ctx, {'out': out, 'bytes': len(svg)}, f"wrote {out}")


# --- solver ----------------------------------------------------------------

def _solve_text(result):
    lines = [f"status: {result.status.value}", f"count: {result.count}", f"nodes: {result.nodes}"]
    if result.reason:
        lines.append(f"reason: {result.reason}")
    if result.witness is not None:
        lines.append(render_ascii(result.witness))
    return '\n'.join(lines)


@cli.command()
@tileset_options
@click.option('--width', type=int, required=True)
@click.option('--height', type=int, required=True)
@click.option('--torus', is_flag=True, help="Wrap both directions.")
@click.option('--count', 'mode', flag_value=SolveMode.COUNT.value, help="Count tilings.")
@click.option('--all', 'mode', flag_value=SolveMode.ALL.value, help="List every tiling.")
@click.option('--budget', type=int, default=None, help="Search node budget.")
@click.pass_context
def solve(ctx, set_file, catalogue_name, symbol_text, width, height, torus, mode, budget):
    """Tile a width x height region."""
    tiles = _tileset(set_file, catalogue_name, symbol_text)
    result = parity_result(width, height) if torus else None
    if result is None:
        try:
            region = Region(width, height, Boundary.TORUS if torus else Boundary.FREE)
        except ValueError as exc:
            raise click.UsageError(str(exc)) from exc
        result = solve_region(tiles, region, SolveMode(mode or SolveMode.FIRST.value),
                              budget or ctx.obj['config'].SOLVER_NODE_BUDGET)
    emit(ctx, result.to_dict(), _solve_text(result))
    ctx.exit(EXIT_CODES[result.status])


@cli.command()
@tileset_options
@click.argument('width', type=int)
@click.argument('height', type=int)
@click.option('--budget', type=int, default=None, help="Search node budget.")
@click.pass_context
def torus(ctx, set_file, catalogue_name, symbol_text, width, height, budget):
    """Search for a periodic tiling with periods WIDTH and HEIGHT."""
    tiles = _tileset(set_file, catalogue_name, symbol_text)
    config = ctx.obj['config']
    result = torus_search(tiles, width, height, budget or config.SOLVER_NODE_BUDGET, config.TORUS_MAX_PERIOD)
    emit(ctx, result.to_dict(), _solve_text(result))
    ctx.exit(EXIT_CODES[result.status])


if __name__ == '__main__':
    cli(obj={})
