#include "channelfield/verify.hpp"
