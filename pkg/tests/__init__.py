# Tests for Blockade Lab
