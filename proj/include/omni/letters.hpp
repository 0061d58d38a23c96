#ifndef OMNI_LETTERS_HPP
#define OMNI_LETTERS_HPP

#include <string>

#include "omni/grid.hpp"

namespace omni {

// Draws a block letter (5x7 cell raster scaled to the box) with the given
// intensity. Supported: A C D E F H I J L N O T U and space.
void draw_letter(RealGrid& image, char letter, int x0, int y0, int width, int height,
                 double value);

bool letter_supported(char letter);

}  // namespace omni

#endif
