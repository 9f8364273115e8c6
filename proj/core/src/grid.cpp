#include "oversparse/grid.hpp"

namespace oversparse {

const char* to_string(ValueScale s) {
    switch (s) {
        case ValueScale::Unit: return "unit";
        case ValueScale::EightBit: return "8bit";
        case ValueScale::SixteenBit: return "16bit";
    }
    return "?";
}

}  // namespace oversparse
