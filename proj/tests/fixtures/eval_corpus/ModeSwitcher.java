package app.ui;

import java.awt.event.ActionEvent;
import java.awt.event.ActionListener;
import javax.swing.JButton;

public class ModeSwitcher implements ActionListener {
    private int mode;
    private JButton pen;
    private JButton eraser;

    public void actionPerformed(ActionEvent e) {
        if (mode == 0) {
            pen.setEnabled(true);
        } else if (mode == 1) {
            eraser.setEnabled(true);
        } else if (mode == 2) {
            pen.setEnabled(false);
            eraser.setEnabled(false);
        }
        mode = (mode + 1) % 3;
    }
}
