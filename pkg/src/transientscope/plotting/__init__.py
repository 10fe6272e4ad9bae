"""Static SVG figures"""

from .svg import plot_states, plot_deltas, plot_portrait

__all__ = ['plot_states', 'plot_deltas', 'plot_portrait']
