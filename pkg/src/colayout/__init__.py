"""colayout: a mixed-initiative indoor layout co-creation engine.

Humans and a rule-driven generator jointly author furnished rooms through
three workflows: manual creation via multimodal text commands, automatic
full-room completion, and scaffolded creation via labeled wireframe
rectangles that convert to and from furniture.
"""

__version__ = "0.1.0"
