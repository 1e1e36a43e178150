"""
SVG scene of the tessellation in the disk
"""
from dataclasses import dataclass, field

VIEW_BOX = '-1.05 -1.05 2.1 2.1'

LAYER_STYLES = {
    'boundary': 'fill="none" stroke="#000000" stroke-width="0.004"',
    'edges': 'fill="none" stroke="#000000" stroke-width="0.002"',
    'ford': 'fill="none" stroke="#1f6fb4" stroke-width="0.0015"',
    'dual': 'fill="none" stroke="#c0392b" stroke-width="0.002"',
}


def fmt(x):
    """Fixed 6-decimal coordinate, without negative zero"""
    text = f'{x:.6f}'
    return '0.000000' if text == '-0.000000' else text


def point(z):
    """SVG coordinates of a disk point, y pointing down"""
    return f'{fmt(z.real)} {fmt(-z.imag)}'


@dataclass
class SvgScene:
    """Layers of cubic paths and circles in the unit disk"""

    edges: list = field(default_factory=list)
    ford: list = field(default_factory=list)
    dual: list = field(default_factory=list)
    title: str = 'Farey tessellation'

    def add_path(self, layer, segments):
        """segments: a line (start, end) or cubic (p0, p1, p2, p3) tuples of complex points"""
        getattr(self, layer).append(('path', segments))

    def add_circle(self, layer, center, radius):
        getattr(self, layer).append(('circle', (center, radius)))

    def _render_item(self, kind, data):
        if kind == 'circle':
            center, radius = data
            return f'<circle cx="{fmt(center.real)}" cy="{fmt(-center.imag)}" r="{fmt(radius)}"/>'
        parts = []
        for segment in data:
            if not parts:
                parts.append(f'M {point(segment[0])}')
            if len(segment) == 2:
                parts.append(f'L {point(segment[1])}')
            else:
                parts.append('C ' + ' '.join(point(z) for z in segment[1:]))
        return f'<path d="{" ".join(parts)}"/>'

    def render(self):
        lines = [
            '<?xml version="1.0" encoding="UTF-8"?>',
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="{VIEW_BOX}">',
            f'<title>{self.title}</title>',
            f'<g id="boundary" {LAYER_STYLES["boundary"]}><circle cx="0" cy="0" r="1"/></g>',
        ]
        for layer in ('edges', 'ford', 'dual'):
            items = getattr(self, layer)
            if not items:
                continue
            lines.append(f'<g id="{layer}" {LAYER_STYLES[layer]}>')
            lines.extend(self._render_item(kind, data) for kind, data in items)
            lines.append('</g>')
        lines.append('</svg>')
        return '\n'.join(lines) + '\n'

    def to_dict(self):
        return {'edges': len(self.edges), 'ford': len(self.ford), 'dual': len(self.dual)}
