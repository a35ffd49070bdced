#pragma once

// placeholder: acceptance runners land here
