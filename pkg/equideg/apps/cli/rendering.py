"""
Output formats of the management commands.

JSON goes through DRF's renderer, so floats print in shortest round-trip form
and keys keep the order the reports build them in; equal jobs print equal
bytes. The table format is a plain-text summary for terminals.
"""
from rest_framework.renderers import JSONRenderer


def render_json(report):
    return JSONRenderer().render(report, renderer_context={'indent': 2}).decode('utf-8')


def _table(headers, rows):
    cells = [[str(h) for h in headers]] + [[_cell(value) for value in row] for row in rows]
    widths = [max(len(row[k]) for row in cells) for k in range(len(headers))]
    lines = ['  '.join(value.ljust(width) for value, width in zip(row, widths)).rstrip() for row in cells]
    lines.insert(1, '  '.join('-' * width for width in widths))
    return lines


def _cell(value):
    if value is None:
        return '-'
    if isinstance(value, (list, tuple)):
        return '[' + ', '.join(_cell(v) for v in value) + ']'
    if isinstance(value, dict):
        return '{' + ', '.join(f'{k}: {_cell(v)}' for k, v in value.items()) + '}'
    return repr(value) if isinstance(value, float) else str(value)


def _certificate_lines(certificates):
    if not certificates:
        return ['no certificates']
    return _table(
        ['kind', 'm0', 'coeff', 'alpha', 'interval', 'guarantee'],
        [[c['kind'], c['m0'], c.get('coeff'), c.get('alpha'), c.get('interval'), c['guarantee']] for c in certificates],
    )


def _bessel_lines(report):
    lines = []
    if 'bound' in report:
        lines.append(f"bound: {_cell(report['bound'])}  max_mode: {_cell(report['max_mode'])}")
    return lines + _table(
        ['m', 'n', 'zero', 'eigenvalue'],
        [[r['m'], r['n'], r['zero'], r['eigenvalue']] for r in report['eigenvalues']],
    )


def _burnside_lines(report):
    element = report['element']
    lines = [
        f"modes: {_cell(report['modes'])}",
        f"reduced: {_cell(report['reduced'])}",
        f"unit: {element['unit']}  radial: {element['radial']}  untracked: {element['untracked']}",
    ]
    lines += _table(['m', 'coeff'], list(element['dihedral'].items())) if element['dihedral'] else ['dihedral: none']
    if 'coeff' in report:
        check = report['coeff']
        lines.append(
            f"coeff at m0={check['m0']}: {check['value']} "
            f"(closed form {check['closed_form']}, agree {check['agree']})"
        )
    return lines


def _existence_lines(report):
    lines = [
        f"sigma0: {_cell([(t['m'], t['n'], t['j']) for t in report['sigma0']])}",
        f"counts: {_cell(report['counts'])}",
        f"S: {_cell(report['S'])}  n0: {report['n0']}  radial: {report['radial_indicator']}",
        f"assumptions asserted: {_cell(report['assumptions_asserted']) if report['assumptions_asserted'] else 'none'}",
        '',
    ]
    return lines + _certificate_lines(report['certificates'])


def _bifurcation_lines(report):
    lines = [f"domain: {_cell(report['domain'])}"]
    points = report['critical_points']
    if points:
        lines += _table(
            ['alpha', 'bracket', 'crossings'],
            [[cp['alpha'], cp['bracket'], [(c['m'], c['n'], c['direction']) for c in cp['crossings']]] for cp in points],
        )
    else:
        lines.append('no critical points')
    summary = report['global']
    lines += [
        '',
        f"J_Lambda: {_cell(summary['J_Lambda'])}  t_Lambda: {_cell(summary['t_Lambda'])}",
        f"sum of local coefficients: {_cell(summary['sum_coeffs'])}  closed form agrees: {summary['closed_form_agrees']}",
        '',
    ]
    certificates = [c for local in report['local'] for c in local['certificates']] + report['unbounded_nonradial']
    return lines + _certificate_lines(certificates)


TABLES = {
    'bessel': _bessel_lines,
    'burnside': _burnside_lines,
    'exist': _existence_lines,
    'bifurcate': _bifurcation_lines,
}


def render(command, report, output_format='json'):
    if output_format == 'table':
        return '\n'.join(TABLES[command](report)) + '\n'
    return render_json(report) + '\n'
