import org.junit.Test;

import static org.junit.Assert.assertNotNull;

public class CleanRunnerTest {

    private final Scheduler scheduler = Scheduler.create();

    @Test
    public void testGetNextWindow() {
        NextWindow window = scheduler.getNextWindow();
        assertNotNull(window);
    }
}
